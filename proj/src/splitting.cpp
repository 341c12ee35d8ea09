#include "proxcalc/splitting.hpp"

#include <sstream>

namespace proxcalc {

namespace {

// A2 contracts for L < 1; the classical unit-step scheme needs L < 2.
void add_lipschitz_warning(const SmoothPairProblem& p, double limit, IterationResult& res) {
  const auto lip = p.g().gradient_lipschitz();
  if (lip && *lip >= limit) {
    std::ostringstream os;
    os << "gradient Lipschitz constant " << *lip << " >= " << limit
       << ": unit-step iteration may not converge";
    res.warnings.push_back(os.str());
  }
}

}  // namespace

IterationResult dr_minimize(const FproxProblem& p, const AlgoConfig& cfg) {
  IterationResult res = run_fixed_point([&](const Point& y) { return dr_classical(p, y); }, p.dim(), cfg);
  res.prox_value = p.f().prox_unchecked(res.y_star, 1.0);
  return res;
}

SmoothPairProblem::SmoothPairProblem(ConvexFunction f, ConvexFunction g)
    : f_(std::move(f)), g_(std::move(g)) {
  if (f_.dim() != g_.dim()) throw Error(Errc::DimensionMismatch, "f and g have different dimensions");
  if (!g_.has_gradient()) throw Error(Errc::MissingGradient, g_.name() + " is not differentiable");
}

Point fbbar_apply(const SmoothPairProblem& p, const Point& x, const Point& y) {
  require_dim(x, p.dim(), "x");
  require_dim(y, p.dim(), "y");
  return p.f().prox_unchecked(x - p.g().gradient(y), 1.0);
}

IterationResult a2_solve(const SmoothPairProblem& p, const Point& x, const AlgoConfig& cfg) {
  require_dim(x, p.dim(), "x");
  IterationResult res =
      run_fixed_point([&](const Point& y) { return fbbar_apply(p, x, y); }, p.dim(), cfg);
  res.prox_value = res.y_star;
  res.heuristic = true;
  add_lipschitz_warning(p, 1.0, res);
  return res;
}

IterationResult fb_classical(const SmoothPairProblem& p, const AlgoConfig& cfg) {
  IterationResult res =
      run_fixed_point([&](const Point& y) { return fbbar_apply(p, y, y); }, p.dim(), cfg);
  res.prox_value = res.y_star;
  add_lipschitz_warning(p, 2.0, res);
  return res;
}

}  // namespace proxcalc
