#pragma once

// CSV output with a "#meta" preamble and spike-train file I/O.
//
// Every experiment file records its full configuration in "#meta key=value"
// lines so a run can be reproduced from the file alone. The timestamp sits
// on its own "#meta generated_at=..." line and is the only part of the
// output allowed to differ between reruns of the same (config, seed).

#include <string>
#include <utility>
#include <vector>

#include "synchro/spike.hpp"

namespace synchro {

// shortest round-trip-ish numeric formatting, stable across runs
std::string fmt(double v);
std::string fmt(int v);
std::string fmt(long long v);

struct CsvDoc {
  std::vector<std::pair<std::string, std::string>> meta;  // key, value
  std::string header;
  std::vector<std::string> rows;

  void meta_kv(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
  void add_timestamp();  // generated_at in UTC
  std::string to_string() const;
  void write(const std::string& path) const;
};

// spike CSV: header "trial,process,time", process in {1,2}
void write_spike_csv(const std::string& path, const Sample& s,
                     const std::vector<std::pair<std::string, std::string>>& meta);

struct SpikeReadReport {
  Sample sample;
  std::vector<std::string> warnings;  // unsorted trains, duplicate times
};
SpikeReadReport read_spike_csv(const std::string& path);

}  // namespace synchro
