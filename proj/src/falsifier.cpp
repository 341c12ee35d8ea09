#include "proxcalc/falsifier.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "proxcalc/catalog.hpp"
#include "proxcalc/error.hpp"

namespace proxcalc::falsifier {

namespace {

// Numerator of the elementary slope, a quadratic in s = 1 + gamma.
double slope_numerator(const Elementary& mu, double s) {
  const auto& [a, b, c, d, e] = mu;
  return (b + c) + a * s + (d + e) * s * s;
}

}  // namespace

std::size_t FormulaCandidate::n() const {
  if (mu.size() != lambda.size() || mu.empty()) {
    throw Error(Errc::InvalidSpec, "candidate needs one mu row per lambda and at least one row");
  }
  const std::size_t cols = mu.front().size();
  if (cols == 0) throw Error(Errc::InvalidSpec, "candidate rows must be nonempty");
  for (const auto& row : mu) {
    if (row.size() != cols) throw Error(Errc::InvalidSpec, "candidate rows have different lengths");
  }
  return cols;
}

double elementary_slope(const Elementary& mu, double gamma) {
  if (gamma == -1.0) throw Error(Errc::PoleAtMinusOne, "elementary slope has a pole at gamma = -1");
  const double s = 1.0 + gamma;
  return slope_numerator(mu, s) / s;
}

double candidate_residual(const FormulaCandidate& c, double gamma) {
  const std::size_t n = c.n();
  const double s = 1.0 + gamma;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.m(); ++i) {
    double prod = 1.0;
    for (const Elementary& mu : c.mu[i]) prod *= slope_numerator(mu, s);
    sum += c.lambda[i] * prod;
  }
  return std::pow(s, static_cast<double>(n)) - (1.0 + 2.0 * gamma) * sum;
}

Certificate contradiction_certificate(const FormulaCandidate& c) {
  Certificate cert;
  cert.n = c.n();
  cert.gamma = -0.5;
  cert.gap = candidate_residual(c, cert.gamma);
  cert.probe_gammas = {0.0, 0.5, 1.0, 2.0, 3.0};
  for (double g : cert.probe_gammas) {
    const double r = candidate_residual(c, g);
    cert.probe_residuals.push_back(r);
    cert.max_probe_residual = std::max(cert.max_probe_residual, std::abs(r));
  }
  return cert;
}

double apply_on_quadratics(const FormulaCandidate& c, double gamma, double x) {
  if (!(gamma >= 0.0)) throw Error(Errc::InvalidSpec, "quadratic family needs gamma >= 0");
  c.n();
  const ConvexFunction q = catalog::build(catalog::CatalogSpec::quadratic(gamma));
  auto elementary = [&q](const Elementary& mu, double v) {
    const auto& [a, b, cc, d, e] = mu;
    const Point p{v};
    const double prox = prox_eval(q, p)[0];
    // prox^{-1} = I + grad q for a differentiable q.
    const double inverse = v + q.gradient(p)[0];
    return a * v + (b + cc) * prox + (d + e) * inverse;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < c.m(); ++i) {
    double v = x;
    for (auto it = c.mu[i].rbegin(); it != c.mu[i].rend(); ++it) v = elementary(*it, v);
    total += c.lambda[i] * v;
  }
  return total;
}

FitEcho least_squares_echo(std::size_t n, std::size_t samples) {
  if (n == 0 || samples < 2) throw Error(Errc::InvalidSpec, "need n >= 1 and at least two samples");
  // Every real polynomial of degree <= 2n splits into n real factors of
  // degree <= 2, so the multipliers reachable by candidates are exactly the
  // polynomials of degree <= 2n in s = 1 + gamma.
  const auto rows = static_cast<Eigen::Index>(samples);
  const auto cols = static_cast<Eigen::Index>(2 * n + 1);
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  FitEcho echo;
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double gamma = 3.0 * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double s = 1.0 + gamma;
    echo.gammas.push_back(gamma);
    b(k) = std::pow(s, static_cast<double>(n));
    double sj = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      a(k, j) = (1.0 + 2.0 * gamma) * sj;
      sj *= s;
    }
  }
  const Eigen::VectorXd coeffs = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd residual = b - a * coeffs;
  echo.max_residual = residual.cwiseAbs().maxCoeff();
  return echo;
}

}  // namespace proxcalc::falsifier
