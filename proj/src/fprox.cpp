#include "proxcalc/fprox.hpp"

#include <algorithm>
#include <cmath>

namespace proxcalc {

namespace {

// Some t with dom-interval `a` containing t and t interior to `b`.
bool meets_interior(const Interval& a, const Interval& b) {
  return b.lo < b.hi && a.lo < b.hi && b.lo < a.hi && a.lo <= a.hi;
}

bool box_meets_interior(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!meets_interior(a[i], b[i])) return false;
  }
  return true;
}

double inclusion_slack(const AlgoConfig& cfg, double x, double y) {
  return 10.0 * cfg.tol * (1.0 + std::abs(x) + std::abs(y));
}

}  // namespace

FproxProblem::FproxProblem(ConvexFunction f, ConvexFunction g, std::optional<bool> additivity_declared)
    : f_(std::move(f)), g_(std::move(g)), additivity_declared_(additivity_declared) {
  if (f_.dim() != g_.dim()) {
    throw Error(Errc::DimensionMismatch, "f has dimension " + std::to_string(f_.dim()) +
                                             ", g has dimension " + std::to_string(g_.dim()));
  }
  if (!intersect(f_.domain_box(), g_.domain_box())) {
    throw Error(Errc::InvalidSpec, "dom(" + f_.name() + ") and dom(" + g_.name() + ") do not meet");
  }
}

AdditivityCheck check_additivity(const FproxProblem& p) {
  if (auto declared = p.additivity_declared()) {
    if (*declared) return {true, "declared by caller"};
    return {false, "declared non-additive by caller"};
  }
  if (p.g().has_full_domain()) return {true, "dom(g) is the whole space"};
  if (p.f().has_full_domain()) return {true, "dom(f) is the whole space"};
  if (box_meets_interior(p.f().domain_box(), p.g().domain_box())) {
    return {true, "dom(f) meets int(dom(g)) (Moreau-Rockafellar)"};
  }
  if (box_meets_interior(p.g().domain_box(), p.f().domain_box())) {
    return {true, "dom(g) meets int(dom(f)) (Moreau-Rockafellar)"};
  }
  return {false, "no domain qualification: dom(f) misses int(dom(g)) and dom(g) misses int(dom(f))"};
}

Point tbar_apply(const FproxProblem& p, const Point& x, const Point& y) {
  require_dim(x, p.dim(), "x");
  require_dim(y, p.dim(), "y");
  const Point pf = p.f().prox_unchecked(y, 1.0);
  return y - pf + p.g().prox_unchecked(x + pf - y, 1.0);
}

Point dr_classical(const FproxProblem& p, const Point& y) {
  require_dim(y, p.dim(), "y");
  return tbar_apply(p, p.f().prox_unchecked(y, 1.0), y);
}

IterationResult a1_solve(const FproxProblem& p, const Point& x, const AlgoConfig& cfg,
                         AdditivityMode mode) {
  require_dim(x, p.dim(), "x");
  const AdditivityCheck additivity = check_additivity(p);
  if (!additivity.holds && mode == AdditivityMode::Verified) {
    throw Error(Errc::AdditivityUnverified, additivity.certificate);
  }
  IterationResult res =
      run_fixed_point([&](const Point& y) { return tbar_apply(p, x, y); }, p.dim(), cfg);
  res.prox_value = p.f().prox_unchecked(res.y_star, 1.0);
  res.additivity_verified = additivity.holds;
  if (!additivity.holds) {
    res.warnings.push_back("additivity not verified: " + additivity.certificate);
  }
  return res;
}

bool inclusion_holds(const FproxProblem& p, double x, double y, double slack) {
  if (p.dim() != 1) throw Error(Errc::DimensionMismatch, "inclusion check is 1D only");
  const double w = p.f().prox_unchecked(Point{y}, 1.0)[0];
  // Test against the graph of dg near w rather than dg(w) alone: a prox
  // output that lands a rounding error off a kink or a domain end would
  // otherwise see the wrong subdifferential. dg is monotone, so the hull of
  // the end values covers everything in between.
  const Interval dom = p.g().domain_box()[0];
  const double a = dom.clamp(w - slack);
  const double b = dom.clamp(w + slack);
  if (a > w + slack || b < w - slack) return false;
  double lo = kInf;
  double hi = -kInf;
  for (double z : {a, w, b}) {
    if (z < dom.lo || z > dom.hi) continue;
    const SubdifferentialInterval s = p.g().subdiff1d(z);
    if (s.is_empty()) continue;
    lo = std::min(lo, s.lo());
    hi = std::max(hi, s.hi());
  }
  if (lo > hi) return false;
  return SubdifferentialInterval::closed(lo, hi).contains(x - y, slack);
}

Point fprox_eval(const FproxProblem& p, const Point& x, const AlgoConfig& cfg, AdditivityMode mode) {
  IterationResult res = a1_solve(p, x, cfg, mode);
  if (!res.converged) {
    throw Error(Errc::MaxIterExceeded, "A1 did not converge in " + std::to_string(res.iterations) +
                                           " iterations (last scaled step " +
                                           std::to_string(res.residual) + ")");
  }
  if (p.dim() == 1 && p.g().has_subdiff1d()) {
    const double xv = x[0];
    const double yv = res.y_star[0];
    if (!inclusion_holds(p, xv, yv, inclusion_slack(cfg, xv, yv))) {
      throw Error(Errc::InclusionViolated, "A1 limit " + res.y_star.to_string() +
                                               " is not in the f-proximal set at " + x.to_string());
    }
  }
  return res.y_star;
}

}  // namespace proxcalc
