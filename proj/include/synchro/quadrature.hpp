#pragma once

// 1-D adaptive quadrature: Gauss-Kronrod 15(7) with interval bisection.
// Integrands here are piecewise smooth (products of exponentials with kinks
// where a sort order flips), so callers pass the kink locations as
// breakpoints and each piece converges fast.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace synchro {

namespace qk15 {
// nodes on [0,1] by symmetry around the midpoint; even indices are
// Kronrod-only, odd ones shared with the embedded 7-point Gauss rule
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {0.129484966168870, 0.279705391489277,
                                 0.381830050505119, 0.417959183673469};
}  // namespace qk15

template <class F>
double gauss_kronrod_15(F&& f, double a, double b, double* abserr,
                        double* resabs = nullptr) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * qk15::wg[3];
  double resk = fc * qk15::wgk[7];
  double rabs = std::fabs(fc) * qk15::wgk[7];
  for (int j = 0; j < 3; ++j) {
    const double x = h * qk15::xgk[2 * j + 1];
    const double f1 = f(c - x), f2 = f(c + x);
    resg += qk15::wg[j] * (f1 + f2);
    resk += qk15::wgk[2 * j + 1] * (f1 + f2);
    rabs += qk15::wgk[2 * j + 1] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const double x = h * qk15::xgk[2 * j];
    const double f1 = f(c - x), f2 = f(c + x);
    resk += qk15::wgk[2 * j] * (f1 + f2);
    rabs += qk15::wgk[2 * j] * (std::fabs(f1) + std::fabs(f2));
  }
  if (abserr) *abserr = std::fabs((resk - resg) * h);
  if (resabs) *resabs = rabs * std::fabs(h);
  return resk * h;
}

// absolute-tolerance adaptive integral over [a,b]; breakpoints inside (a,b)
// seed the initial subdivision
template <class F>
double integrate(F&& f, double a, double b, double tol,
                 const std::vector<double>& breakpoints = {}) {
  if (!(a < b)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  struct Piece {
    double lo, hi, tol;
    int depth;
  };
  std::vector<Piece> work;
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] < cuts[i + 1]) work.push_back({cuts[i], cuts[i + 1], piece_tol, 0});

  double total = 0.0;
  while (!work.empty()) {
    const Piece p = work.back();
    work.pop_back();
    double err = 0.0, resabs = 0.0;
    const double val = gauss_kronrod_15(f, p.lo, p.hi, &err, &resabs);
    // once the error estimate is pure cancellation noise, splitting further
    // cannot improve it: the estimate and the budget then both fall linearly
    // in the width and the recursion would only stop at the depth cap
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (err <= p.tol || err <= noise || p.depth >= 48 ||
        p.hi - p.lo < 1e-14 * (b - a)) {
      total += val;
    } else {
      const double mid = 0.5 * (p.lo + p.hi);
      work.push_back({p.lo, mid, 0.5 * p.tol, p.depth + 1});
      work.push_back({mid, p.hi, 0.5 * p.tol, p.depth + 1});
    }
  }
  return total;
}

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nw[i] = {-x, w};
    nw[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1) nw[n / 2].first = 0.0;  // exact center
  return nw;
}

}  // namespace synchro
