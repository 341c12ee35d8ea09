#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace proxcalc::falsifier {

/// Coefficients (a, b, c, d, e) of
///   a I + b prox_f + c prox_g + d prox_f^{-1} + e prox_g^{-1}.
using Elementary = std::array<double, 5>;

/// sum_i lambda_i prod_j P^{mu_ij}, an m x n grid of elementary operators.
struct FormulaCandidate {
  std::vector<double> lambda;               // m entries
  std::vector<std::vector<Elementary>> mu;  // m rows of n entries

  std::size_t m() const noexcept { return lambda.size(); }
  /// Throws Errc::InvalidSpec when rows are missing or ragged.
  std::size_t n() const;
};

/// Slope of P^mu when f = g = (gamma/2) x^2:
///   ((b + c) + a (1 + gamma) + (d + e) (1 + gamma)^2) / (1 + gamma).
/// Throws Errc::PoleAtMinusOne at gamma = -1.
double elementary_slope(const Elementary& mu, double gamma);

/// Polynomial residual of the candidate identity on the quadratic family:
///   (1 + gamma)^n - (1 + 2 gamma) sum_i lambda_i prod_j q_ij(gamma)
/// with q_ij the slope numerators. Zero for all gamma iff the candidate
/// reproduces prox_{f+g} on that family.
double candidate_residual(const FormulaCandidate& c, double gamma);

struct Certificate {
  std::size_t n = 0;
  double gamma = -0.5;
  double gap = 0.0;  // residual at gamma = -1/2, always 2^{-n}
  std::vector<double> probe_gammas;
  std::vector<double> probe_residuals;
  double max_probe_residual = 0.0;
};

Certificate contradiction_certificate(const FormulaCandidate& c);

/// Applies the candidate operator to x for f = g = (gamma/2) x^2 built from
/// the catalog, composing the elementary operators right to left. gamma >= 0.
double apply_on_quadratics(const FormulaCandidate& c, double gamma, double x);

struct FitEcho {
  std::vector<double> gammas;
  double max_residual = 0.0;
};

/// Least-squares fit of the residual polynomial over every degree <= 2n
/// multiplier (the closure of all candidates with m >= 1, n <= 2) on
/// `samples` equispaced gammas in [0, 3]; reports the largest remaining
/// |residual| at the samples.
FitEcho least_squares_echo(std::size_t n, std::size_t samples = 20);

}  // namespace proxcalc::falsifier
