#include "proxcalc/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "proxcalc/catalog.hpp"
#include "proxcalc/fprox.hpp"

namespace proxcalc::sensitivity {

namespace {

ConvexFunction box_indicator(const Box& box) {
  std::vector<double> lo(box.size());
  std::vector<double> hi(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    lo[i] = box[i].lo;
    hi[i] = box[i].hi;
  }
  return catalog::build(catalog::CatalogSpec::indicator_box(std::move(lo), std::move(hi)));
}

std::vector<std::vector<double>> hessian_matrix(const ConvexFunction& g, const Point& at) {
  const std::size_t n = g.dim();
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Point e = Point::zeros(n);
    e.at_mut(j) = 1.0;
    const Point col = g.hessian_apply(at, e);
    for (std::size_t i = 0; i < n; ++i) h[i][j] = col[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (h[i][j] + h[j][i]);
      h[i][j] = h[j][i] = s;
    }
  }
  return h;
}

double cone_tolerance(const AlgoConfig& cfg) { return std::max(1e-8, 1e3 * cfg.tol); }

AlgoConfig from_origin(AlgoConfig cfg) {
  cfg.y0.reset();
  return cfg;
}

}  // namespace

std::string_view status_name(ConeStatus s) noexcept {
  switch (s) {
    case ConeStatus::Free: return "free";
    case ConeStatus::NonNegative: return "nonneg";
    case ConeStatus::NonPositive: return "nonpos";
    case ConeStatus::Zero: return "zero";
  }
  return "?";
}

Box ConeSpec::as_box() const {
  Box box(status.size());
  for (std::size_t i = 0; i < status.size(); ++i) {
    switch (status[i]) {
      case ConeStatus::Free: box[i] = {-kInf, kInf}; break;
      case ConeStatus::NonNegative: box[i] = {0.0, kInf}; break;
      case ConeStatus::NonPositive: box[i] = {-kInf, 0.0}; break;
      case ConeStatus::Zero: box[i] = {0.0, 0.0}; break;
    }
  }
  return box;
}

bool ConeSpec::contains(const Point& w, double slack) const { return box_contains(as_box(), w, slack); }

Point ConeSpec::project(const Point& w) const { return project_onto_box(as_box(), w); }

std::string ConeSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < status.size(); ++i) {
    if (i) out += ',';
    out += status_name(status[i]);
  }
  return out;
}

ConeSpec critical_cone(const Box& k, const Point& v, double tol) {
  require_dim(v, k.size(), "v");
  ConeSpec cone;
  cone.status.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Interval& ki = k[i];
    const double p = ki.clamp(v[i]);
    const double s = tol * (1.0 + std::abs(v[i]));
    const bool at_lo = std::isfinite(ki.lo) && std::abs(p - ki.lo) <= s;
    const bool at_hi = std::isfinite(ki.hi) && std::abs(p - ki.hi) <= s;
    const bool normal_part = std::abs(v[i] - p) > s;
    ConeStatus st = ConeStatus::Free;
    if (ki.is_degenerate() || (at_lo && at_hi)) {
      st = ConeStatus::Zero;
    } else if (at_lo) {
      st = normal_part ? ConeStatus::Zero : ConeStatus::NonNegative;
    } else if (at_hi) {
      st = normal_part ? ConeStatus::Zero : ConeStatus::NonPositive;
    }
    cone.status[i] = st;
  }
  return cone;
}

ViProblem::ViProblem(Box k, ConvexFunction g, Point r0, Point r1)
    : k_(std::move(k)), g_(std::move(g)), r0_(std::move(r0)), r1_(std::move(r1)) {
  if (k_.size() != g_.dim()) throw Error(Errc::DimensionMismatch, "K and g have different dimensions");
  require_dim(r0_, g_.dim(), "r0");
  require_dim(r1_, g_.dim(), "r1");
  for (const Interval& i : k_) {
    if (!(i.lo <= i.hi) || i.lo == kInf || i.hi == -kInf) throw Error(Errc::InvalidSpec, "K is empty");
  }
  if (!g_.has_hessian()) throw Error(Errc::HessianMissing, g_.name() + " has no Hessian");
  if (!g_.has_full_domain()) throw Error(Errc::InvalidSpec, g_.name() + " must be finite everywhere");
}

TrajectoryPoint trajectory(const ViProblem& p, double t, const AlgoConfig& cfg) {
  const FproxProblem problem(box_indicator(p.k()), p.g());
  const IterationResult res = a1_solve(problem, p.r(t), cfg);
  if (!res.converged) {
    throw Error(Errc::MaxIterExceeded, "A1 did not converge at t = " + std::to_string(t));
  }
  return TrajectoryPoint{res.prox_value, res.y_star};
}

DerivativeReport derivative_report(const ViProblem& p, const AlgoConfig& cfg) {
  DerivativeReport rep;
  rep.at_zero = trajectory(p, 0.0, cfg);
  rep.cone = critical_cone(p.k(), rep.at_zero.v, cone_tolerance(cfg));

  const FproxProblem linearized(box_indicator(rep.cone.as_box()),
                                catalog::quadratic_form(hessian_matrix(p.g(), rep.at_zero.u)));
  rep.inner = a1_solve(linearized, p.r1(), from_origin(cfg));
  if (!rep.inner.converged) {
    throw Error(Errc::MaxIterExceeded, "A1 on the linearized problem did not converge");
  }
  rep.du = rep.inner.prox_value;
  rep.dv = rep.inner.y_star;
  return rep;
}

Point derivative_at_zero(const ViProblem& p, const AlgoConfig& cfg) { return derivative_report(p, cfg).du; }

FdCheck fd_check(const ViProblem& p, const AlgoConfig& cfg, double h, double threshold) {
  if (!(h > 0.0)) throw Error(Errc::NonPositiveStep, "finite-difference step must be positive");
  const Point u0 = trajectory(p, 0.0, cfg).u;
  const Point uh = trajectory(p, h, cfg).u;
  FdCheck out;
  out.finite_difference = (uh - u0) * (1.0 / h);
  out.formula = derivative_at_zero(p, cfg);
  out.error = distance(out.finite_difference, out.formula);
  out.consistent = out.error <= threshold;
  return out;
}

}  // namespace proxcalc::sensitivity
