#include "proxcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace proxcalc::oracle {

namespace {

constexpr int kWindowExpansions = 6;

struct AxisResult {
  double t = 0.0;
  double value = kInf;
};

double ternary_min(const std::function<double(double)>& phi, double a, double b) {
  for (int it = 0; it < kTernaryIterations; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (phi(m1) < phi(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  return 0.5 * (a + b);
}

// Minimize phi over [lo, hi] (finite): coarse grid, then ternary search in
// the two cells around the best grid point.
AxisResult minimize_on_window(const std::function<double(double)>& phi, double lo, double hi) {
  const double width = hi - lo;
  const std::size_t cells = width > 0.0 ? static_cast<std::size_t>(std::ceil(width / kGridStep)) : 0;
  const double h = cells > 0 ? width / static_cast<double>(cells) : 0.0;

  AxisResult best;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= cells; ++i) {
    const double t = i == cells ? hi : lo + h * static_cast<double>(i);
    const double v = phi(t);
    if (v < best.value) {
      best = {t, v};
      best_i = i;
    }
  }
  if (!std::isfinite(best.value)) return best;
  if (cells == 0) return best;

  const double a = best_i == 0 ? lo : lo + h * static_cast<double>(best_i - 1);
  const double b = best_i == cells ? hi : std::min(hi, lo + h * static_cast<double>(best_i + 1));
  const double t = ternary_min(phi, a, b);
  const double v = phi(t);
  if (v <= best.value) best = {t, v};
  for (double edge : {a, b}) {
    const double ve = phi(edge);
    if (ve < best.value) best = {edge, ve};
  }
  return best;
}

// Minimize along one coordinate of z, starting from a window of radius
// `radius` centred on the projection of x_i onto the domain interval. The
// window grows while the minimizer sits on an artificial window edge.
AxisResult minimize_axis(const Target& h, const Point& x, const Point& z, std::size_t axis,
                         double radius) {
  const Interval dom = h.domain[axis];
  const double centre = dom.clamp(x[axis]);
  Point probe = z;
  auto phi = [&](double t) {
    probe.at_mut(axis) = t;
    const double d = t - x[axis];
    return h.value(probe) + 0.5 * d * d;
  };

  AxisResult best;
  for (int attempt = 0; attempt <= kWindowExpansions; ++attempt) {
    const double lo = std::max(dom.lo, centre - radius);
    const double hi = std::min(dom.hi, centre + radius);
    best = minimize_on_window(phi, lo, hi);
    if (!std::isfinite(best.value)) {
      throw Error(Errc::UnboundedSearch, "no finite value on the oracle grid");
    }
    const double slack = 2.0 * kGridStep;
    const bool on_artificial_edge = (best.t <= lo + slack && lo > dom.lo) ||
                                    (best.t >= hi - slack && hi < dom.hi);
    if (!on_artificial_edge) break;
    radius *= 4.0;
  }
  return best;
}

}  // namespace

Target target_of(const ConvexFunction& h) {
  return Target{[h](const Point& z) { return h.value(z); }, h.domain_box()};
}

Target sum_of(const ConvexFunction& f, const ConvexFunction& g) {
  if (f.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "sum of functions of different dimension");
  auto box = intersect(f.domain_box(), g.domain_box());
  if (!box) throw Error(Errc::InvalidSpec, "domains of the summands do not meet");
  return Target{[f, g](const Point& z) {
                  const double a = f.value(z);
                  return std::isfinite(a) ? a + g.value(z) : kInf;
                },
                *box};
}

ProxAnswer oracle_prox(const Target& h, const Point& x) {
  const std::size_t dim = x.dim();
  if (dim == 0 || dim > 3) throw Error(Errc::DimensionMismatch, "oracle_prox supports dim 1..3");
  require_dim(x, h.domain.size(), "oracle argument");
  const double radius = 10.0 * (1.0 + norm(x));

  Point z = project_onto_box(h.domain, x);
  ProxAnswer ans;
  ans.grid_step = kGridStep;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t axis = 0; axis < dim; ++axis) {
      const AxisResult r = minimize_axis(h, x, z, axis, radius);
      moved = std::max(moved, std::abs(r.t - z[axis]));
      z.at_mut(axis) = r.t;
    }
    ans.sweeps = sweep;
    if (dim == 1 || (sweep > 1 && moved <= 1e-13 * (1.0 + norm(z)))) break;
  }
  ans.argmin = z;
  return ans;
}

void Grid::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(Errc::InvalidSpec, "grid step must be positive");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(Errc::InvalidSpec, "grid bounds must be finite with lo <= hi");
  }
}

std::size_t Grid::size() const {
  validate();
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double Grid::at(std::size_t i) const { return lo + step * static_cast<double>(i); }

SetAnswer fprox_set_oracle(const FproxProblem& p, double x, const Grid& y_grid, double inflation) {
  if (p.dim() != 1) throw Error(Errc::DimensionMismatch, "set oracle is 1D only");
  if (!p.g().has_subdiff1d()) {
    throw Error(Errc::MissingSubdifferential, p.g().name() + " has no 1D subdifferential");
  }
  const std::size_t n = y_grid.size();
  std::size_t first = n;
  std::size_t last = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (inclusion_holds(p, x, y_grid.at(i), inflation)) {
      first = std::min(first, i);
      last = i;
      ++count;
    }
  }

  SetAnswer ans;
  ans.grid_step = y_grid.step;
  ans.inflation = inflation;
  if (count == 0) return ans;
  if (count != last - first + 1) {
    throw Error(Errc::InternalError, "f-proximal set at x = " + std::to_string(x) +
                                         " is not an interval on the grid");
  }
  ans.set = SubdifferentialInterval::closed(y_grid.at(first), y_grid.at(last));
  return ans;
}

std::vector<FigureRow> figure_data(const FproxProblem& p, const Grid& xs, const Grid& y_grid,
                                   double inflation) {
  std::vector<FigureRow> rows;
  const std::size_t n = xs.size();
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs.at(i);
    const SetAnswer s = fprox_set_oracle(p, x, y_grid, inflation);
    FigureRow row;
    row.x = x;
    row.set_lo = s.set.is_empty() ? std::numeric_limits<double>::quiet_NaN() : s.set.lo();
    row.set_hi = s.set.is_empty() ? std::numeric_limits<double>::quiet_NaN() : s.set.hi();
    row.prox_g = prox_eval(p.g(), Point{x})[0];
    rows.push_back(row);
  }
  return rows;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::string out = "x,set_lo,set_hi,prox_g\n";
  char buf[128];
  for (const FigureRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.x, r.set_lo, r.set_hi, r.prox_g);
    out += buf;
  }
  return out;
}

}  // namespace proxcalc::oracle
