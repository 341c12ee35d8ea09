#include "proxcalc/core.hpp"

#include <algorithm>
#include <cmath>

namespace proxcalc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonPositiveStep: return "NonPositiveStep";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InfiniteValue: return "InfiniteValue";
    case Errc::AdditivityUnverified: return "AdditivityUnverified";
    case Errc::MaxIterExceeded: return "MaxIterExceeded";
    case Errc::UnboundedSearch: return "UnboundedSearch";
    case Errc::MissingSubdifferential: return "MissingSubdifferential";
    case Errc::MissingGradient: return "MissingGradient";
    case Errc::HessianMissing: return "HessianMissing";
    case Errc::InclusionViolated: return "InclusionViolated";
    case Errc::PoleAtMinusOne: return "PoleAtMinusOne";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

Box full_box(std::size_t dim) { return Box(dim, Interval{}); }

bool box_contains(const Box& box, const Point& p, double slack) {
  require_dim(p, box.size(), "point");
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box[i].contains(p[i], slack)) return false;
  }
  return true;
}

Point project_onto_box(const Box& box, const Point& p) {
  require_dim(p, box.size(), "point");
  Point out = p;
  for (std::size_t i = 0; i < box.size(); ++i) out.at_mut(i) = box[i].clamp(p[i]);
  return out;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "box dimensions differ");
  Box out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].lo = std::max(a[i].lo, b[i].lo);
    out[i].hi = std::min(a[i].hi, b[i].hi);
    if (out[i].lo > out[i].hi) return std::nullopt;
  }
  return out;
}

SubdifferentialInterval SubdifferentialInterval::closed(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw Error(Errc::InternalError, "subdifferential interval with lo > hi");
  }
  SubdifferentialInterval s;
  s.empty_ = false;
  s.lo_ = lo;
  s.hi_ = hi;
  return s;
}

double SubdifferentialInterval::lo() const {
  if (empty_) throw Error(Errc::InternalError, "lo() of an empty subdifferential");
  return lo_;
}

double SubdifferentialInterval::hi() const {
  if (empty_) throw Error(Errc::InternalError, "hi() of an empty subdifferential");
  return hi_;
}

bool SubdifferentialInterval::contains(double v, double slack) const {
  return !empty_ && v >= lo_ - slack && v <= hi_ + slack;
}

ConvexFunction::ConvexFunction(ConvexFunctionParts parts) {
  if (parts.dim == 0) throw Error(Errc::InvalidSpec, parts.name + ": dimension must be positive");
  if (!parts.value || !parts.prox) {
    throw Error(Errc::InvalidSpec, parts.name + ": value and prox are required");
  }
  if (parts.domain_box.empty()) parts.domain_box = full_box(parts.dim);
  if (parts.domain_box.size() != parts.dim) {
    throw Error(Errc::InvalidSpec, parts.name + ": domain box has the wrong dimension");
  }
  if (parts.prox_range_box && parts.prox_range_box->size() != parts.dim) {
    throw Error(Errc::InvalidSpec, parts.name + ": prox range box has the wrong dimension");
  }
  if (parts.dim == 1 && !parts.subdiff1d) {
    throw Error(Errc::InvalidSpec, parts.name + ": 1D functions must provide subdiff1d");
  }
  if (parts.hessian_apply && !parts.gradient) {
    throw Error(Errc::InvalidSpec, parts.name + ": hessian without gradient");
  }
  parts_ = std::make_shared<const ConvexFunctionParts>(std::move(parts));
}

bool ConvexFunction::has_full_domain() const {
  return std::all_of(domain_box().begin(), domain_box().end(),
                     [](const Interval& i) { return i.is_real_line(); });
}

double ConvexFunction::value(const Point& x) const {
  require_dim(x, dim(), "argument");
  return parts_->value(x);
}

SubdifferentialInterval ConvexFunction::subdiff1d(double x) const {
  if (!parts_->subdiff1d) {
    throw Error(Errc::MissingSubdifferential, name() + " has no 1D subdifferential");
  }
  return parts_->subdiff1d(x);
}

Point ConvexFunction::gradient(const Point& x) const {
  if (!parts_->gradient) throw Error(Errc::MissingGradient, name() + " is not differentiable");
  require_dim(x, dim(), "argument");
  return parts_->gradient(x);
}

Point ConvexFunction::hessian_apply(const Point& base, const Point& direction) const {
  if (!parts_->hessian_apply) {
    throw Error(Errc::HessianMissing, name() + " is not twice differentiable");
  }
  require_dim(base, dim(), "base point");
  require_dim(direction, dim(), "direction");
  return parts_->hessian_apply(base, direction);
}

Point prox_eval(const ConvexFunction& f, const Point& x, double step) {
  require_dim(x, f.dim(), "prox argument");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(Errc::NonPositiveStep, "prox step must be a positive finite number");
  }
  return f.prox_unchecked(x, step);
}

void AlgoConfig::validate(std::size_t dim) const {
  if (!(tol > 0.0)) throw Error(Errc::InvalidSpec, "tol must be positive");
  if (max_iter < 1) throw Error(Errc::InvalidSpec, "max_iter must be at least 1");
  if (y0) require_dim(*y0, dim, "y0");
}

Point AlgoConfig::start(std::size_t dim) const { return y0 ? *y0 : Point::zeros(dim); }

IterationResult run_fixed_point(const std::function<Point(const Point&)>& step, std::size_t dim,
                                const AlgoConfig& cfg) {
  cfg.validate(dim);
  IterationResult res;
  Point y = cfg.start(dim);
  res.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 4096)));
  for (int k = 1; k <= cfg.max_iter; ++k) {
    Point next = step(y);
    const double scaled = distance(next, y) / (1.0 + norm(y));
    if (!std::isfinite(scaled)) {
      res.warnings.push_back("iteration produced a non-finite value at step " + std::to_string(k));
      break;
    }
    y = std::move(next);
    res.iterations = k;
    res.residual = scaled;
    res.trace.push_back({k, scaled});
    if (scaled <= cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.y_star = std::move(y);
  return res;
}

}  // namespace proxcalc
