#include "proxcalc/catalog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace proxcalc::catalog {

namespace {

constexpr std::string_view kKindNames[] = {
    "indicator_box", "indicator_point", "indicator_halfline", "abs", "l1",
    "quadratic",     "linear",          "zero",               "neg_sqrt_on_halfline",
};

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

Point map_coords(const Point& x, const auto& fn) {
  Point out = x;
  for (std::size_t i = 0; i < x.dim(); ++i) out.at_mut(i) = fn(i, x[i]);
  return out;
}

// Normal cone of [lo, hi] at x.
SubdifferentialInterval interval_normal_cone(const Interval& k, double x) {
  if (!k.contains(x)) return SubdifferentialInterval::empty();
  const double lo = x == k.lo ? -kInf : 0.0;
  const double hi = x == k.hi ? kInf : 0.0;
  return SubdifferentialInterval::closed(lo, hi);
}

ConvexFunction make_box_indicator(std::string name, Box box) {
  ConvexFunctionParts parts;
  parts.name = std::move(name);
  parts.dim = box.size();
  parts.value = [box](const Point& x) { return box_contains(box, x) ? 0.0 : kInf; };
  parts.prox = [box](const Point& x, double) { return project_onto_box(box, x); };
  if (box.size() == 1) {
    parts.subdiff1d = [k = box[0]](double x) { return interval_normal_cone(k, x); };
  }
  parts.domain_box = box;
  parts.prox_range_box = box;
  return ConvexFunction(std::move(parts));
}

ConvexFunction make_l1(std::string name, std::size_t dim) {
  ConvexFunctionParts parts;
  parts.name = std::move(name);
  parts.dim = dim;
  parts.value = [](const Point& x) {
    double s = 0.0;
    for (double c : x.coords()) s += std::abs(c);
    return s;
  };
  parts.prox = [](const Point& x, double step) {
    return map_coords(x, [step](std::size_t, double v) { return soft_threshold(v, step); });
  };
  if (dim == 1) {
    parts.subdiff1d = [](double x) {
      if (x > 0.0) return SubdifferentialInterval::singleton(1.0);
      if (x < 0.0) return SubdifferentialInterval::singleton(-1.0);
      return SubdifferentialInterval::closed(-1.0, 1.0);
    };
  }
  parts.prox_range_box = full_box(dim);
  return ConvexFunction(std::move(parts));
}

// gamma/2 |x - center|^2 + <slope, x>; covers quadratic, linear and zero.
ConvexFunction make_smooth(std::string name, double gamma, Point center, Point slope) {
  const std::size_t dim = center.dim();
  ConvexFunctionParts parts;
  parts.name = std::move(name);
  parts.dim = dim;
  parts.value = [=](const Point& x) {
    const Point d = x - center;
    return 0.5 * gamma * dot(d, d) + dot(slope, x);
  };
  parts.prox = [=](const Point& x, double step) {
    return (x - step * slope + (step * gamma) * center) * (1.0 / (1.0 + step * gamma));
  };
  parts.gradient = [=](const Point& x) { return gamma * (x - center) + slope; };
  parts.hessian_apply = [=](const Point&, const Point& d) { return gamma * d; };
  parts.gradient_lipschitz = gamma;
  if (dim == 1) {
    parts.subdiff1d = [=](double x) {
      return SubdifferentialInterval::singleton(gamma * (x - center[0]) + slope[0]);
    };
  }
  parts.prox_range_box = full_box(dim);
  return ConvexFunction(std::move(parts));
}

// Unique positive root of 2 s^3 - 2 x s - step = 0, the stationarity
// condition of -sqrt(w) + (w - x)^2 / (2 step) in s = sqrt(w).
double neg_sqrt_prox(double x, double step) {
  auto phi = [&](double s) { return 2.0 * s * s * s - 2.0 * x * s - step; };
  double lo = 0.0;
  double hi = 1.0;
  while (phi(hi) <= 0.0) hi *= 2.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > 0.0 ? hi : lo) = mid;
  }
  const double s = 0.5 * (lo + hi);
  return s * s;
}

ConvexFunction make_neg_sqrt() {
  ConvexFunctionParts parts;
  parts.name = "neg_sqrt_on_halfline";
  parts.dim = 1;
  parts.value = [](const Point& x) { return x[0] >= 0.0 ? -std::sqrt(x[0]) : kInf; };
  parts.prox = [](const Point& x, double step) { return Point{neg_sqrt_prox(x[0], step)}; };
  // The slope blows up at 0, so the subdifferential is empty there.
  parts.subdiff1d = [](double x) {
    if (x <= 0.0) return SubdifferentialInterval::empty();
    return SubdifferentialInterval::singleton(-0.5 / std::sqrt(x));
  };
  parts.domain_box = Box{Interval{0.0, kInf}};
  return ConvexFunction(std::move(parts));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidSpec, what);
}

void require_finite(const std::vector<double>& v, const char* field) {
  for (double c : v) require(std::isfinite(c), std::string(field) + " must be finite");
}

}  // namespace

std::string_view kind_name(Kind kind) noexcept { return kKindNames[static_cast<int>(kind)]; }

Kind kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i) {
    if (kKindNames[i] == name) return static_cast<Kind>(i);
  }
  throw Error(Errc::InvalidSpec, "unknown catalog kind '" + std::string(name) + "'");
}

CatalogSpec CatalogSpec::indicator_box(std::vector<double> lo, std::vector<double> hi) {
  CatalogSpec s;
  s.kind = Kind::IndicatorBox;
  s.dim = lo.size();
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

CatalogSpec CatalogSpec::indicator_point(std::vector<double> at) {
  CatalogSpec s;
  s.kind = Kind::IndicatorPoint;
  s.dim = at.size();
  s.at = std::move(at);
  return s;
}

CatalogSpec CatalogSpec::indicator_halfline(HalflineSide side, double origin) {
  CatalogSpec s;
  s.kind = Kind::IndicatorHalfline;
  s.side = side;
  s.origin = origin;
  return s;
}

CatalogSpec CatalogSpec::abs() {
  CatalogSpec s;
  s.kind = Kind::Abs;
  return s;
}

CatalogSpec CatalogSpec::l1(std::size_t dim) {
  CatalogSpec s;
  s.kind = Kind::L1;
  s.dim = dim;
  return s;
}

CatalogSpec CatalogSpec::quadratic(double gamma, std::size_t dim) {
  CatalogSpec s;
  s.kind = Kind::Quadratic;
  s.gamma = gamma;
  s.dim = dim;
  return s;
}

CatalogSpec CatalogSpec::shifted_quadratic(double gamma, std::vector<double> center) {
  CatalogSpec s = quadratic(gamma, center.size());
  s.center = std::move(center);
  return s;
}

CatalogSpec CatalogSpec::linear(std::vector<double> slope) {
  CatalogSpec s;
  s.kind = Kind::Linear;
  s.dim = slope.size();
  s.slope = std::move(slope);
  return s;
}

CatalogSpec CatalogSpec::zero(std::size_t dim) {
  CatalogSpec s;
  s.kind = Kind::Zero;
  s.dim = dim;
  return s;
}

CatalogSpec CatalogSpec::neg_sqrt_on_halfline() {
  CatalogSpec s;
  s.kind = Kind::NegSqrtOnHalfline;
  return s;
}

std::size_t CatalogSpec::effective_dim() const {
  switch (kind) {
    case Kind::IndicatorBox: return lo.size();
    case Kind::IndicatorPoint: return at.size();
    case Kind::IndicatorHalfline:
    case Kind::Abs:
    case Kind::NegSqrtOnHalfline: return 1;
    case Kind::Linear: return slope.size();
    case Kind::Quadratic: return center.empty() ? dim : center.size();
    case Kind::L1:
    case Kind::Zero: return dim;
  }
  return dim;
}

void CatalogSpec::validate() const {
  const std::string name(kind_name(kind));
  switch (kind) {
    case Kind::IndicatorBox:
      require(!lo.empty() && lo.size() == hi.size(), name + ": lo/hi must be nonempty and equal length");
      for (std::size_t i = 0; i < lo.size(); ++i) {
        require(!std::isnan(lo[i]) && !std::isnan(hi[i]), name + ": NaN bound");
        require(lo[i] <= hi[i], name + ": lo must not exceed hi");
        require(lo[i] < kInf && hi[i] > -kInf, name + ": box would be empty");
      }
      break;
    case Kind::IndicatorPoint:
      require(!at.empty(), name + ": 'at' must be nonempty");
      require_finite(at, "at");
      break;
    case Kind::IndicatorHalfline:
      require(std::isfinite(origin), name + ": origin must be finite");
      break;
    case Kind::Quadratic:
      require(std::isfinite(gamma) && gamma >= 0.0, name + ": gamma must be finite and >= 0");
      require(effective_dim() > 0, name + ": dimension must be positive");
      require_finite(center, "center");
      break;
    case Kind::Linear:
      require(!slope.empty(), name + ": slope must be nonempty");
      require_finite(slope, "slope");
      break;
    case Kind::L1:
    case Kind::Zero:
      require(dim > 0, name + ": dimension must be positive");
      break;
    case Kind::Abs:
    case Kind::NegSqrtOnHalfline:
      break;
  }
}

ConvexFunction build(const CatalogSpec& spec) {
  spec.validate();
  const std::size_t dim = spec.effective_dim();
  switch (spec.kind) {
    case Kind::IndicatorBox: {
      Box box(dim);
      for (std::size_t i = 0; i < dim; ++i) box[i] = Interval{spec.lo[i], spec.hi[i]};
      return make_box_indicator("indicator_box", std::move(box));
    }
    case Kind::IndicatorPoint: {
      Box box(dim);
      for (std::size_t i = 0; i < dim; ++i) box[i] = Interval{spec.at[i], spec.at[i]};
      return make_box_indicator("indicator_point", std::move(box));
    }
    case Kind::IndicatorHalfline: {
      const Interval k = spec.side == HalflineSide::NonNegative ? Interval{spec.origin, kInf}
                                                                : Interval{-kInf, spec.origin};
      return make_box_indicator("indicator_halfline", Box{k});
    }
    case Kind::Abs: return make_l1("abs", 1);
    case Kind::L1: return make_l1("l1", dim);
    case Kind::Quadratic: {
      Point center = spec.center.empty() ? Point::zeros(dim) : make_point(spec.center);
      return make_smooth("quadratic", spec.gamma, std::move(center), Point::zeros(dim));
    }
    case Kind::Linear: return make_smooth("linear", 0.0, Point::zeros(dim), make_point(spec.slope));
    case Kind::Zero: return make_smooth("zero", 0.0, Point::zeros(dim), Point::zeros(dim));
    case Kind::NegSqrtOnHalfline: return make_neg_sqrt();
  }
  throw Error(Errc::InvalidSpec, "unhandled catalog kind");
}

ConvexFunction quadratic_form(std::vector<std::vector<double>> hessian) {
  const std::size_t n = hessian.size();
  if (n == 0) throw Error(Errc::InvalidSpec, "quadratic_form: empty matrix");
  Eigen::MatrixXd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (hessian[i].size() != n) throw Error(Errc::InvalidSpec, "quadratic_form: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(hessian[i][j])) throw Error(Errc::InvalidSpec, "quadratic_form: non-finite entry");
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hessian[i][j];
    }
  }
  if (!h.isApprox(h.transpose(), 1e-12)) throw Error(Errc::InvalidSpec, "quadratic_form: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  const double max_eig = eig.eigenvalues().maxCoeff();
  if (min_eig < -1e-12 * std::max(1.0, max_eig)) {
    throw Error(Errc::InvalidSpec, "quadratic_form: matrix is not positive semidefinite");
  }

  auto apply = [h](const Point& d) {
    const Eigen::Map<const Eigen::VectorXd> v(d.coords().data(), static_cast<Eigen::Index>(d.dim()));
    const Eigen::VectorXd r = h * v;
    return make_point(std::span<const double>(r.data(), static_cast<std::size_t>(r.size())));
  };

  ConvexFunctionParts parts;
  parts.name = "quadratic_form";
  parts.dim = n;
  parts.value = [apply](const Point& x) { return 0.5 * dot(apply(x), x); };
  parts.gradient = apply;
  parts.hessian_apply = [apply](const Point&, const Point& d) { return apply(d); };
  parts.prox = [h](const Point& x, double step) {
    const auto n = h.rows();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + step * h;
    const Eigen::Map<const Eigen::VectorXd> v(x.coords().data(), n);
    const Eigen::VectorXd r = a.ldlt().solve(v);
    return make_point(std::span<const double>(r.data(), static_cast<std::size_t>(n)));
  };
  parts.gradient_lipschitz = std::max(0.0, max_eig);
  if (n == 1) {
    const double c = hessian[0][0];
    parts.subdiff1d = [c](double x) { return SubdifferentialInterval::singleton(c * x); };
  }
  parts.prox_range_box = full_box(n);
  return ConvexFunction(std::move(parts));
}

Point conjugate_prox(const ConvexFunction& g, const Point& x) { return x - prox_eval(g, x, 1.0); }

double moreau_envelope(const ConvexFunction& g, const Point& x) {
  const Point p = prox_eval(g, x, 1.0);
  const double gp = g.value(p);
  if (!std::isfinite(gp)) {
    throw Error(Errc::InfiniteValue, g.name() + " is infinite at its own prox point");
  }
  const Point d = x - p;
  return gp + 0.5 * dot(d, d);
}

double conjugate_envelope(const ConvexFunction& g, const Point& x) {
  const Point p = prox_eval(g, x, 1.0);
  const double gp = g.value(p);
  if (!std::isfinite(gp)) {
    throw Error(Errc::InfiniteValue, g.name() + " is infinite at its own prox point");
  }
  const Point dual = x - p;
  // g*(dual) = <dual, p> - g(p) because dual is a subgradient of g at p.
  return dot(dual, p) - gp + 0.5 * dot(p, p);
}

}  // namespace proxcalc::catalog
