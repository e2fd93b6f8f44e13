#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "synchro/harness.hpp"
#include "synchro/jitter_formulas.hpp"
#include "synchro/simulate.hpp"

using namespace synchro;

namespace {

Model small_jitter(double eta) {
  JitterParams p;
  p.lambda1 = 10;
  p.lambda2 = 10;
  p.eta = eta;
  p.T = 2.0;
  p.noise = NoiseSpec::uniform_noise(-0.1, 0.1);
  return Model::make_jitter(p);
}

}  // namespace

TEST_CASE("n* search finds the exact threshold on a unit lattice") {
  std::map<int, int> calls;
  const auto probe = [&](int n) {
    ++calls[n];
    return ProbeRow{0, std::min(1.0, n / 100.0), 0.01};
  };
  const NStarResult r = find_n_star(probe, 0.05, NStarSearch{1, 2000});
  CHECK(r.achieved);
  CHECK(r.n_star == 95);
  for (const auto& [n, c] : calls) CHECK(c == 1);  // memoized
  CHECK(std::is_sorted(r.probes.begin(), r.probes.end(),
                       [](const ProbeRow& a, const ProbeRow& b) {
                         return a.n < b.n;
                       }));
}

TEST_CASE("n* search respects a coarse lattice") {
  const auto probe = [](int n) {
    return ProbeRow{0, std::min(1.0, n / 100.0), 0.01};
  };
  const NStarResult r = find_n_star(probe, 0.05, NStarSearch{10, 2000});
  CHECK(r.achieved);
  CHECK(r.n_star == 100);  // smallest multiple of 10 with power >= 0.95
}

TEST_CASE("n* search instantly succeeds when power is saturated") {
  const auto probe = [](int) { return ProbeRow{0, 1.0, 0.0}; };
  const NStarResult r = find_n_star(probe, 0.2, NStarSearch{10, 500});
  CHECK(r.achieved);
  CHECK(r.n_star == 10);
  CHECK(r.probes.size() == 1);
}

TEST_CASE("n* search reports saturation honestly") {
  const auto probe = [](int) { return ProbeRow{0, 0.3, 0.02}; };
  const NStarResult r = find_n_star(probe, 0.2, NStarSearch{10, 2000});
  CHECK_FALSE(r.achieved);
  CHECK(r.n_star == 2000);
  // the boundary itself must have been probed before giving up
  bool saw_boundary = false;
  for (const auto& p : r.probes) saw_boundary |= (p.n == 2000);
  CHECK(saw_boundary);
}

TEST_CASE("n* search validates its knobs") {
  const auto probe = [](int) { return ProbeRow{0, 1.0, 0.0}; };
  CHECK_THROWS(find_n_star(probe, 0.0, NStarSearch{10, 100}));
  CHECK_THROWS(find_n_star(probe, 1.0, NStarSearch{10, 100}));
  CHECK_THROWS(find_n_star(probe, 0.2, NStarSearch{0, 100}));
  CHECK_THROWS(find_n_star(probe, 0.2, NStarSearch{200, 100}));
}

TEST_CASE("quadratic fit recovers exact coefficients") {
  const std::vector<double> xs{10, 20, 30};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(30.0 + 0.8 * x * x);
  const QuadFit f = fit_quadratic(xs, ys);
  CHECK(f.c0 == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(f.c1 == doctest::Approx(0.8).epsilon(1e-10));
  for (double res : f.residuals) CHECK(std::abs(res) < 1e-8);
}

TEST_CASE("quadratic fit of constant data has zero curvature") {
  const QuadFit f = fit_quadratic({1, 2, 3, 4}, {5, 5, 5, 5});
  CHECK(f.c0 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(f.c1) < 1e-12);
}

TEST_CASE("quadratic fit rejects degenerate designs") {
  CHECK_THROWS(fit_quadratic({2, 2, 2}, {1, 2, 3}));
  CHECK_THROWS(fit_quadratic({1}, {1}));
  CHECK_THROWS(fit_quadratic({1, 2}, {1, 2, 3}));
}

TEST_CASE("separation estimate agrees with the closed form") {
  const Model m = small_jitter(1.0);
  const McMoment mm = estimate_delta_phi_mc(m, 10, 400, 0.1, 9001);
  const NoiseSpec ns = NoiseSpec::uniform_noise(-0.1, 0.1);
  const double want = delta_phi_jitter(1.0, 2.0, ns, 0.1);  // 1.95
  CHECK(mm.N == 400);
  CHECK(mm.se > 0.0);
  CHECK(std::abs(mm.estimate - want) < 5 * mm.se);
  // the studentized error should not be suspiciously small either
  CHECK(mm.se < 2.0);
}

TEST_CASE("power estimates are deterministic across thread counts") {
  const Model m = small_jitter(2.0);
  const TestConfig tc{0.1, 0.05, 50};
  const PowerPoint p1 = estimate_power(m, tc, 8, 30, 777, 1);
  const PowerPoint p3 = estimate_power(m, tc, 8, 30, 777, 3);
  CHECK(p1.power == p3.power);
  CHECK(p1.ci_half == p3.ci_half);

  const McMoment m1 = estimate_delta_phi_mc(m, 6, 50, 0.1, 123, 1);
  const McMoment m4 = estimate_delta_phi_mc(m, 6, 50, 0.1, 123, 4);
  CHECK(m1.estimate == m4.estimate);
  CHECK(m1.se == m4.se);
}

TEST_CASE("maximally dependent data has full power, silent data none") {
  const Model ident = Model::make_identical(10.0, 2.0);
  const TestConfig tc{0.05, 0.05, 99};
  const PowerPoint strong = estimate_power(ident, tc, 50, 40, 31337);
  CHECK(strong.power >= 0.97);

  const Model quiet = Model::make_silent();
  const PowerPoint none = estimate_power(quiet, tc, 10, 40, 31338);
  CHECK(none.power == 0.0);
}

TEST_CASE("power_curve labels its grid and stays deterministic") {
  const Model m = small_jitter(2.0);
  const TestConfig tc{0.1, 0.05, 60};
  const std::vector<double> grid{0.05, 0.1};
  const auto pts = power_curve(m, tc, "delta", grid, 10, 25, 2024);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].param == "delta");
  CHECK(pts[0].value == 0.05);
  CHECK(pts[1].value == 0.1);
  for (const auto& p : pts) {
    CHECK(p.power >= 0.0);
    CHECK(p.power <= 1.0);
    CHECK(p.n == 10);
    CHECK(p.B == 60);
  }
  const auto again = power_curve(m, tc, "delta", grid, 10, 25, 2024);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(pts[i].power == again[i].power);
}

TEST_CASE("power_curve validates the axis") {
  const Model m = small_jitter(1.0);
  const TestConfig tc{0.1, 0.05, 20};
  CHECK_THROWS(power_curve(m, tc, "delta", {0.2, 0.1}, 10, 5, 1));  // unsorted
  CHECK_THROWS(power_curve(m, tc, "M", {4, 8}, 10, 5, 1));  // M needs hawkes
  CHECK_THROWS(power_curve(m, tc, "rate", {1, 2}, 10, 5, 1));
  CHECK_THROWS(power_curve(m, tc, "delta", {}, 10, 5, 1));
}

TEST_CASE("power_curve varies n through the grid") {
  const Model m = Model::make_identical(10.0, 2.0);
  const TestConfig tc{0.05, 0.05, 40};
  const auto pts = power_curve(m, tc, "n", {4, 12}, 999, 20, 555);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].n == 4);
  CHECK(pts[1].n == 12);
}

TEST_CASE("type I harness accepts null models and rejects the rest") {
  const TestConfig tc{0.1, 0.05, 30};
  CHECK_NOTHROW(type_i_experiment(small_jitter(0.0), tc, 6, 5, 1));
  CHECK_THROWS_AS(type_i_experiment(small_jitter(1.0), tc, 6, 5, 1),
                  std::invalid_argument);
  HawkesParams hp;
  CHECK_THROWS_AS(type_i_experiment(Model::make_hawkes(hp), tc, 6, 5, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(type_i_experiment(Model::make_hawkes_indep(hp), tc, 6, 5, 1));
}

TEST_CASE("n* monte-carlo wrapper is reproducible and order-independent") {
  // the identical model rejects from tiny n, so the search stays cheap
  const Model m = Model::make_identical(8.0, 1.0);
  const TestConfig tc{0.05, 0.05, 30};
  const NStarResult r1 = find_n_star_mc(m, tc, 0.2, NStarSearch{5, 80}, 20, 42);
  const NStarResult r2 = find_n_star_mc(m, tc, 0.2, NStarSearch{5, 80}, 20, 42, 3);
  CHECK(r1.achieved == r2.achieved);
  CHECK(r1.n_star == r2.n_star);
  REQUIRE(r1.probes.size() == r2.probes.size());
  for (std::size_t i = 0; i < r1.probes.size(); ++i) {
    CHECK(r1.probes[i].n == r2.probes[i].n);
    CHECK(r1.probes[i].power == r2.probes[i].power);
  }
}
