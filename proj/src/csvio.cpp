#include "synchro/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace synchro {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(long long v) { return std::to_string(v); }

void CsvDoc::add_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  meta.emplace_back("generated_at", buf);
}

std::string CsvDoc::to_string() const {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "#meta " << k << "=" << v << "\n";
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
  return os.str();
}

void CsvDoc::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << to_string();
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_spike_csv(const std::string& path, const Sample& s,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  CsvDoc doc;
  doc.meta = meta;
  // record the trial count so silent trials survive a round trip
  doc.meta.emplace_back("trials", std::to_string(s.size()));
  doc.header = "trial,process,time";
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (double t : s[i].x1)
      doc.rows.push_back(std::to_string(i) + ",1," + fmt(t));
    for (double t : s[i].x2)
      doc.rows.push_back(std::to_string(i) + ",2," + fmt(t));
  }
  doc.write(path);
}

SpikeReadReport read_spike_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  SpikeReadReport rep;
  std::map<long long, TrialPair> trials;
  std::string line;
  bool saw_header = false;
  long long declared = -1;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') {
      const std::string tag = "#meta trials=";
      if (line.rfind(tag, 0) == 0) declared = std::atoll(line.c_str() + tag.size());
      continue;
    }
    if (!saw_header) {
      saw_header = true;  // first non-comment line is the header
      continue;
    }
    long long trial;
    int process;
    double time;
    if (std::sscanf(line.c_str(), "%lld,%d,%lf", &trial, &process, &time) != 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected trial,process,time");
    if (process != 1 && process != 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": process must be 1 or 2");
    if (trial < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trial ids start at 0");
    auto& tp = trials[trial];
    (process == 1 ? tp.x1 : tp.x2).push_back(time);
  }
  if (!saw_header) throw std::runtime_error(path + ": empty file");

  // ids are dense 0..n-1; a gap or a declared count marks silent trials
  long long top = trials.empty() ? -1 : trials.rbegin()->first;
  if (declared > 0) top = std::max(top, declared - 1);
  for (long long id = 0; id <= top; ++id) trials[id];

  for (auto& [id, tp] : trials) {
    for (Train* tr : {&tp.x1, &tp.x2}) {
      if (!is_sorted_train(*tr)) {
        rep.warnings.push_back("trial " + std::to_string(id) +
                               ": unsorted train, sorting");
        std::sort(tr->begin(), tr->end());
      }
      if (std::adjacent_find(tr->begin(), tr->end()) != tr->end())
        rep.warnings.push_back("trial " + std::to_string(id) +
                               ": duplicate timestamps (each counts separately)");
    }
    rep.sample.push_back(std::move(tp));
  }
  if (rep.sample.empty()) throw std::runtime_error(path + ": no trials");
  return rep;
}

}  // namespace synchro
