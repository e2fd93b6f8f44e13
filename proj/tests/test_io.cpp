#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "synchro/csvio.hpp"
#include "synchro/simulate.hpp"
#include "synchro/spike.hpp"
#include "synchro/svg.hpp"

using namespace synchro;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/synchro_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("numeric formatting is stable and round-trippable") {
  CHECK(fmt(0.1) == "0.1");
  CHECK(fmt(1.95) == "1.95");
  CHECK(fmt(42) == "42");
  CHECK(fmt(1e-9) == "1e-09");
  CHECK(fmt(1234567890LL) == "1234567890");
  // ten significant digits keep experiment values distinguishable
  CHECK(std::stod(fmt(12.944271909999159)) == doctest::Approx(12.9442719100).epsilon(1e-10));
}

TEST_CASE("csv documents render meta, header, rows in order") {
  CsvDoc doc;
  doc.meta_kv("tool", "synchro");
  doc.meta_kv("alpha", "0.05");
  doc.header = "x,y";
  doc.rows.push_back("1,2");
  doc.rows.push_back("3,4");
  const std::string s = doc.to_string();
  CHECK(s == "#meta tool=synchro\n#meta alpha=0.05\nx,y\n1,2\n3,4\n");
}

TEST_CASE("timestamp sits on its own meta line") {
  CsvDoc doc;
  doc.meta_kv("seed", "1");
  doc.add_timestamp();
  doc.header = "v";
  const std::string s = doc.to_string();
  CHECK(s.find("#meta generated_at=") != std::string::npos);
  // removing that single line restores a reproducible document
  std::istringstream in(s);
  std::string line, rest;
  while (std::getline(in, line))
    if (line.rfind("#meta generated_at=", 0) != 0) rest += line + "\n";
  CHECK(rest == "#meta seed=1\nv\n");
}

TEST_CASE("spike csv round trip") {
  Sample s(3);
  s[0].x1 = {0.1, 0.5, 1.9};
  s[0].x2 = {0.2};
  s[1].x1 = {};
  s[1].x2 = {0.4, 0.6};
  s[2].x1 = {1.0};
  s[2].x2 = {};
  TempFile tf("roundtrip.csv");
  write_spike_csv(tf.path, s, {{"model", "unit"}, {"T", "2"}});
  const SpikeReadReport rep = read_spike_csv(tf.path);
  CHECK(rep.warnings.empty());
  REQUIRE(rep.sample.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(rep.sample[i].x1 == s[i].x1);
    CHECK(rep.sample[i].x2 == s[i].x2);
  }
  // file carries the meta preamble and the canonical header
  const std::string text = slurp(tf.path);
  CHECK(text.find("#meta model=unit") != std::string::npos);
  CHECK(text.find("trial,process,time") != std::string::npos);
}

TEST_CASE("spike csv reader flags unsorted input but fixes it") {
  TempFile tf("unsorted.csv");
  {
    std::ofstream f(tf.path);
    f << "trial,process,time\n";
    f << "0,1,0.9\n0,1,0.3\n0,2,0.5\n";
  }
  const SpikeReadReport rep = read_spike_csv(tf.path);
  REQUIRE(rep.sample.size() == 1);
  CHECK(rep.sample[0].x1 == Train{0.3, 0.9});
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("spike csv reader warns on duplicate times") {
  TempFile tf("dups.csv");
  {
    std::ofstream f(tf.path);
    f << "trial,process,time\n";
    f << "0,1,0.5\n0,1,0.5\n";
  }
  const SpikeReadReport rep = read_spike_csv(tf.path);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("spike csv reader rejects malformed rows and processes") {
  TempFile tf("bad.csv");
  {
    std::ofstream f(tf.path);
    f << "trial,process,time\n";
    f << "0,3,0.5\n";
  }
  CHECK_THROWS(read_spike_csv(tf.path));
  {
    std::ofstream f(tf.path);
    f << "trial,process,time\n";
    f << "zero,1,0.5\n";
  }
  CHECK_THROWS(read_spike_csv(tf.path));
  CHECK_THROWS(read_spike_csv("/nonexistent/nope.csv"));
}

TEST_CASE("spike csv reader skips comment lines anywhere") {
  TempFile tf("comments.csv");
  {
    std::ofstream f(tf.path);
    f << "#meta tool=synchro\n";
    f << "trial,process,time\n";
    f << "0,1,0.25\n";
    f << "# stray remark\n";
    f << "1,2,0.75\n";
  }
  const SpikeReadReport rep = read_spike_csv(tf.path);
  REQUIRE(rep.sample.size() == 2);
  CHECK(rep.sample[0].x1 == Train{0.25});
  CHECK(rep.sample[1].x2 == Train{0.75});
}

TEST_CASE("fully silent trials survive a round trip, even in last position") {
  Sample s(3);
  s[0].x1 = {0.5};
  s[1].x2 = {1.5};
  // trial 2 has no spikes at all; only the recorded count can restore it
  TempFile tf("silent.csv");
  write_spike_csv(tf.path, s, {});
  const SpikeReadReport rep = read_spike_csv(tf.path);
  REQUIRE(rep.sample.size() == 3);
  CHECK(rep.sample[1].x2 == Train{1.5});
  CHECK(rep.sample[2].x1.empty());
  CHECK(rep.sample[2].x2.empty());
}

TEST_CASE("trial ids may be sparse; gaps become empty trials") {
  TempFile tf("sparse.csv");
  {
    std::ofstream f(tf.path);
    f << "trial,process,time\n";
    f << "0,1,0.1\n2,2,0.2\n";
  }
  const SpikeReadReport rep = read_spike_csv(tf.path);
  REQUIRE(rep.sample.size() == 3);
  CHECK(rep.sample[1].x1.empty());
  CHECK(rep.sample[1].x2.empty());
  CHECK(rep.sample[2].x2 == Train{0.2});
}

TEST_CASE("csv write creates the file and is re-readable as text") {
  CsvDoc doc;
  doc.meta_kv("k", "v");
  doc.header = "a";
  doc.rows.push_back("1");
  TempFile tf("doc.csv");
  doc.write(tf.path);
  CHECK(slurp(tf.path) == doc.to_string());
  CHECK_THROWS(doc.write("/nonexistent/dir/file.csv"));
}

TEST_CASE("svg rendering emits a well-formed document with the data") {
  SvgSeries s;
  s.x = {1, 2, 3};
  s.y = {0.1, 0.5, 0.9};
  s.err = {0.05, 0.05, 0.05};
  s.label = "power";
  TempFile tf("curve.svg");
  write_svg_curves(tf.path, {s}, "demo", "n", "power");
  const std::string text = slurp(tf.path);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
  CHECK(text.find("demo") != std::string::npos);
  CHECK_THROWS(write_svg_curves(tf.path, {}, "t", "x", "y"));
}

TEST_CASE("noise spec text forms round-trip through parse") {
  for (const std::string spec : {"uniform:-0.1,0.1", "uniform:0,0", "tridec:0.2",
                                 "triinc:0.05"}) {
    const NoiseSpec ns = NoiseSpec::parse(spec);
    const NoiseSpec back = NoiseSpec::parse(ns.to_string());
    CHECK(back.kind == ns.kind);
    CHECK(back.lo == ns.lo);
    CHECK(back.hi == ns.hi);
    CHECK(back.D == ns.D);
  }
}
