#pragma once

#include <functional>
#include <string>
#include <vector>

#include "proxcalc/core.hpp"
#include "proxcalc/fprox.hpp"

namespace proxcalc::oracle {

/// A function known only through its values and a box containing its
/// domain. Values may be +inf.
struct Target {
  ValueFn value;
  Box domain;
};

Target target_of(const ConvexFunction& h);
/// f + g, with the domain box intersected. Throws Errc::InvalidSpec when the
/// boxes do not meet.
Target sum_of(const ConvexFunction& f, const ConvexFunction& g);

struct ProxAnswer {
  Point argmin;
  double grid_step = 0.0;  // coarse grid spacing per axis
  int sweeps = 0;          // coordinate-descent sweeps used (1 in 1D)
};

inline constexpr double kGridStep = 1e-2;
inline constexpr int kTernaryIterations = 60;
inline constexpr int kMaxSweeps = 200;

/// Brute-force argmin of h(z) + |z - x|^2 / 2 on dom(h) intersected with
/// [x - R, x + R], R = 10 (1 + |x|): coarse grid then ternary search, one
/// axis at a time. Multi-dimensional targets are handled by coordinate
/// descent, valid for separable h only. dim <= 3.
///
/// Throws Errc::UnboundedSearch when no grid point has a finite value and
/// Errc::DimensionMismatch for dim > 3.
ProxAnswer oracle_prox(const Target& h, const Point& x);

struct Grid {
  double lo = -5.0;
  double hi = 5.0;
  double step = 1e-3;

  /// Throws Errc::InvalidSpec for a non-positive step or lo > hi.
  void validate() const;
  std::size_t size() const;
  double at(std::size_t i) const;
};

struct SetAnswer {
  SubdifferentialInterval set = SubdifferentialInterval::empty();
  double grid_step = 0.0;
  double inflation = 0.0;
};

inline constexpr double kDefaultInflation = 1e-9;

/// Grid scan of {y : x - y in dg(prox_f(y))} with the subdifferential
/// inflated by `inflation`. The qualifying points must be contiguous,
/// otherwise Errc::InternalError is thrown. 1D only; requires g.subdiff1d.
SetAnswer fprox_set_oracle(const FproxProblem& p, double x, const Grid& y_grid,
                           double inflation = kDefaultInflation);

struct FigureRow {
  double x = 0.0;
  double set_lo = 0.0;  // NaN when the set is empty
  double set_hi = 0.0;
  double prox_g = 0.0;
};

/// One row per x of `xs`: the f-proximal set and prox_g(x).
std::vector<FigureRow> figure_data(const FproxProblem& p, const Grid& xs, const Grid& y_grid,
                                   double inflation = kDefaultInflation);

/// CSV with header `x,set_lo,set_hi,prox_g`, 17 significant digits.
std::string figure_csv(const std::vector<FigureRow>& rows);

}  // namespace proxcalc::oracle
