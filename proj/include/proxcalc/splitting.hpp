#pragma once

#include "proxcalc/core.hpp"
#include "proxcalc/fprox.hpp"

namespace proxcalc {

/// Douglas-Rachford iteration y_{k+1} = DR(y_k). prox_value = prox_f(y_star)
/// minimizes f + g when the iteration converges.
IterationResult dr_minimize(const FproxProblem& p, const AlgoConfig& cfg);

/// Pair (f, g) with g differentiable on the whole space.
class SmoothPairProblem {
 public:
  /// Throws Errc::MissingGradient if g has no gradient and
  /// Errc::DimensionMismatch if dims differ.
  SmoothPairProblem(ConvexFunction f, ConvexFunction g);

  const ConvexFunction& f() const noexcept { return f_; }
  const ConvexFunction& g() const noexcept { return g_; }
  std::size_t dim() const noexcept { return f_.dim(); }

 private:
  ConvexFunction f_;
  ConvexFunction g_;
};

/// prox_f(x - grad g(y))
Point fbbar_apply(const SmoothPairProblem& p, const Point& x, const Point& y);

/// y_{k+1} = fbbar_apply(p, x, y_k), unit step. Its fixed point is
/// prox_{f+g}(x), but no convergence guarantee is known, so results are
/// flagged heuristic and nonconvergence is reported, not thrown.
IterationResult a2_solve(const SmoothPairProblem& p, const Point& x, const AlgoConfig& cfg);

/// Classical forward-backward y_{k+1} = prox_f(y_k - grad g(y_k)).
IterationResult fb_classical(const SmoothPairProblem& p, const AlgoConfig& cfg);

}  // namespace proxcalc
