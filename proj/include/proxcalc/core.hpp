#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxcalc/error.hpp"
#include "proxcalc/point.hpp"

namespace proxcalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] of the extended real line.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
  bool is_real_line() const { return lo == -kInf && hi == kInf; }
  bool is_degenerate() const { return lo == hi; }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

/// Per-coordinate product of closed intervals.
using Box = std::vector<Interval>;

Box full_box(std::size_t dim);
bool box_contains(const Box& box, const Point& p, double slack = 0.0);
Point project_onto_box(const Box& box, const Point& p);
/// Empty optional when the two boxes do not meet.
std::optional<Box> intersect(const Box& a, const Box& b);

/// 1D subdifferential value: either empty or a closed interval with
/// possibly infinite endpoints.
class SubdifferentialInterval {
 public:
  static SubdifferentialInterval empty() { return SubdifferentialInterval(); }
  static SubdifferentialInterval closed(double lo, double hi);
  static SubdifferentialInterval singleton(double v) { return closed(v, v); }

  bool is_empty() const noexcept { return empty_; }
  double lo() const;
  double hi() const;

  /// Membership with both endpoints pushed outwards by `slack`.
  bool contains(double v, double slack = 0.0) const;

 private:
  SubdifferentialInterval() = default;
  bool empty_ = true;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

using ValueFn = std::function<double(const Point&)>;
using ProxFn = std::function<Point(const Point&, double)>;
using Subdiff1dFn = std::function<SubdifferentialInterval(double)>;
using GradientFn = std::function<Point(const Point&)>;
using HessianApplyFn = std::function<Point(const Point& base, const Point& direction)>;

/// Everything needed to describe an element of Gamma_0(R^n). Optional
/// capabilities are left empty when the function does not have them.
struct ConvexFunctionParts {
  std::string name;
  std::size_t dim = 1;
  ValueFn value;
  ProxFn prox;
  Subdiff1dFn subdiff1d;
  GradientFn gradient;
  HessianApplyFn hessian_apply;
  std::optional<double> gradient_lipschitz;
  Box domain_box;
  std::optional<Box> prox_range_box;
};

/// Immutable, cheaply copyable handle to a convex function. Copies share
/// the same underlying description and are safe to use across threads.
class ConvexFunction {
 public:
  /// Throws Errc::InvalidSpec if value/prox are missing, dim is zero, the
  /// boxes have the wrong size, or a 1D function lacks subdiff1d.
  explicit ConvexFunction(ConvexFunctionParts parts);

  const std::string& name() const noexcept { return parts_->name; }
  std::size_t dim() const noexcept { return parts_->dim; }
  const Box& domain_box() const noexcept { return parts_->domain_box; }
  const std::optional<Box>& prox_range_box() const noexcept { return parts_->prox_range_box; }
  std::optional<double> gradient_lipschitz() const noexcept { return parts_->gradient_lipschitz; }

  bool has_subdiff1d() const noexcept { return static_cast<bool>(parts_->subdiff1d); }
  bool has_gradient() const noexcept { return static_cast<bool>(parts_->gradient); }
  bool has_hessian() const noexcept { return static_cast<bool>(parts_->hessian_apply); }
  bool has_full_domain() const;

  /// +inf outside the domain.
  double value(const Point& x) const;
  SubdifferentialInterval subdiff1d(double x) const;
  Point gradient(const Point& x) const;
  Point hessian_apply(const Point& base, const Point& direction) const;

  /// Raw prox without argument validation; use prox_eval from user code.
  Point prox_unchecked(const Point& x, double step) const { return parts_->prox(x, step); }

 private:
  std::shared_ptr<const ConvexFunctionParts> parts_;
};

/// argmin_z f(z) + |z - x|^2 / (2 step).
Point prox_eval(const ConvexFunction& f, const Point& x, double step = 1.0);

struct AlgoConfig {
  double tol = 1e-10;
  int max_iter = 100000;
  std::optional<Point> y0;  // zero vector when unset

  /// Throws Errc::InvalidSpec on tol <= 0 or max_iter < 1, and
  /// Errc::DimensionMismatch if y0 has the wrong dimension.
  void validate(std::size_t dim) const;
  Point start(std::size_t dim) const;
};

struct TraceEntry {
  int iteration = 0;
  double residual = 0.0;
};

/// Output of a fixed-point run. `residual` is the scaled step
/// |y_{k+1} - y_k| / (1 + |y_k|) of the last iteration, which is what the
/// stopping rule compares to tol.
struct IterationResult {
  Point y_star;
  Point prox_value;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
  bool additivity_verified = true;
  bool heuristic = false;
  std::vector<std::string> warnings;
};

/// Runs y_{k+1} = step(y_k) from cfg.start(dim) until the scaled step drops
/// below cfg.tol or cfg.max_iter is reached. The prox_value field is left
/// for the caller to fill.
IterationResult run_fixed_point(const std::function<Point(const Point&)>& step, std::size_t dim,
                                const AlgoConfig& cfg);

}  // namespace proxcalc
