#pragma once

#include <string>
#include <vector>

#include "proxcalc/core.hpp"

namespace proxcalc::sensitivity {

enum class ConeStatus { Free, NonNegative, NonPositive, Zero };

std::string_view status_name(ConeStatus s) noexcept;

/// Coordinatewise polyhedral cone: each axis is the whole line, a halfline
/// or {0}.
struct ConeSpec {
  std::vector<ConeStatus> status;

  std::size_t dim() const noexcept { return status.size(); }
  Box as_box() const;
  bool contains(const Point& w, double slack = 0.0) const;
  Point project(const Point& w) const;
  std::string to_string() const;
};

/// Critical cone of the box K at v: feasible directions at proj_K(v),
/// intersected with the orthogonal complement of v - proj_K(v).
/// `tol` decides when a coordinate counts as sitting on a bound and when
/// v - proj_K(v) counts as nonzero; it is scaled by (1 + |v_i|).
ConeSpec critical_cone(const Box& k, const Point& v, double tol = 0.0);

/// u(t) = prox_{i_K + g}(r0 + t r1) for a box K and a twice differentiable
/// g on the whole space.
class ViProblem {
 public:
  /// Throws Errc::HessianMissing if g has no Hessian, Errc::InvalidSpec for
  /// an empty box, Errc::DimensionMismatch on inconsistent sizes.
  ViProblem(Box k, ConvexFunction g, Point r0, Point r1);

  const Box& k() const noexcept { return k_; }
  const ConvexFunction& g() const noexcept { return g_; }
  const Point& r0() const noexcept { return r0_; }
  const Point& r1() const noexcept { return r1_; }
  std::size_t dim() const noexcept { return r0_.dim(); }
  Point r(double t) const { return r0_ + t * r1_; }

 private:
  Box k_;
  ConvexFunction g_;
  Point r0_;
  Point r1_;
};

struct TrajectoryPoint {
  Point u;  // prox_{f+g}(r(t)) = proj_K(v)
  Point v;  // A1 limit, the f-proximal point r(t) - grad g(u)
};

/// Throws Errc::MaxIterExceeded if A1 does not converge.
TrajectoryPoint trajectory(const ViProblem& p, double t, const AlgoConfig& cfg);

struct DerivativeReport {
  TrajectoryPoint at_zero;
  ConeSpec cone;
  Point du;  // u'(0)
  Point dv;  // v'(0), the A1 limit of the linearized problem
  IterationResult inner;
};

/// u'(0) = prox_{i_C + psi}(r1) with C the critical cone at v(0) and
/// psi(w) = <D^2 g(u(0)) w, w> / 2, evaluated with A1.
DerivativeReport derivative_report(const ViProblem& p, const AlgoConfig& cfg);
Point derivative_at_zero(const ViProblem& p, const AlgoConfig& cfg);

struct FdCheck {
  Point finite_difference;
  Point formula;
  double error = 0.0;
  bool consistent = false;  // error <= threshold
};

inline constexpr double kFdStep = 1e-4;
inline constexpr double kFdThreshold = 1e-3;

/// Forward difference (u(h) - u(0)) / h against the formula. A mismatch
/// suggests u is not differentiable at 0.
FdCheck fd_check(const ViProblem& p, const AlgoConfig& cfg, double h = kFdStep,
                 double threshold = kFdThreshold);

}  // namespace proxcalc::sensitivity
