#pragma once

#include <optional>
#include <string>

#include "proxcalc/core.hpp"

namespace proxcalc {

/// Pair (f, g) whose sum is to be handled through the f-proximal operator
/// of g, i.e. (I + dg o prox_f)^{-1}.
class FproxProblem {
 public:
  /// Throws Errc::DimensionMismatch if dims differ and Errc::InvalidSpec if
  /// the domain boxes of f and g do not meet.
  FproxProblem(ConvexFunction f, ConvexFunction g,
               std::optional<bool> additivity_declared = std::nullopt);

  const ConvexFunction& f() const noexcept { return f_; }
  const ConvexFunction& g() const noexcept { return g_; }
  std::size_t dim() const noexcept { return f_.dim(); }
  std::optional<bool> additivity_declared() const noexcept { return additivity_declared_; }

 private:
  ConvexFunction f_;
  ConvexFunction g_;
  std::optional<bool> additivity_declared_;
};

struct AdditivityCheck {
  bool holds = false;
  std::string certificate;
};

/// Sufficient test for d(f+g) = df + dg on the domain boxes: a declared
/// override, a full-domain function, or dom(one) meeting int(dom(other)).
AdditivityCheck check_additivity(const FproxProblem& p);

/// y - prox_f(y) + prox_g(x + prox_f(y) - y)
Point tbar_apply(const FproxProblem& p, const Point& x, const Point& y);

/// Classical Douglas-Rachford step; equals tbar_apply(p, prox_f(y), y).
Point dr_classical(const FproxProblem& p, const Point& y);

enum class AdditivityMode { Verified, Unverified };

/// Fixed-point iteration y_{k+1} = tbar_apply(p, x, y_k). On convergence
/// y_star lies in the f-proximal set at x and prox_value = prox_f(y_star),
/// which is prox_{f+g}(x) when the additivity condition holds.
///
/// Throws Errc::AdditivityUnverified when check_additivity fails and mode
/// is Verified. Running out of iterations is reported through
/// `converged == false`, not an exception.
IterationResult a1_solve(const FproxProblem& p, const Point& x, const AlgoConfig& cfg,
                         AdditivityMode mode = AdditivityMode::Verified);

/// x - y in dg(prox_f(y)), up to `slack` in both the point and the subgradient.
/// 1D only; throws Errc::DimensionMismatch otherwise.
bool inclusion_holds(const FproxProblem& p, double x, double y, double slack);

/// One element of the f-proximal set at x (the A1 limit). Throws
/// Errc::MaxIterExceeded if A1 does not converge and
/// Errc::InclusionViolated if, in 1D, the limit fails the defining
/// inclusion.
Point fprox_eval(const FproxProblem& p, const Point& x, const AlgoConfig& cfg,
                 AdditivityMode mode = AdditivityMode::Verified);

}  // namespace proxcalc
