#include "doctest.h"

#include <cmath>

#include "proxcalc/error.hpp"
#include "proxcalc/falsifier.hpp"
#include "test_support.hpp"

using namespace proxcalc;
using namespace proxcalc::falsifier;
using proxcalc::testing::rng;
using proxcalc::testing::thrown_code;
using proxcalc::testing::uniform;

namespace {

FormulaCandidate random_candidate(std::size_t m, std::size_t n) {
  FormulaCandidate c;
  for (std::size_t i = 0; i < m; ++i) {
    c.lambda.push_back(uniform(-3.0, 3.0));
    std::vector<Elementary> row(n);
    for (auto& mu : row) {
      for (double& v : mu) v = uniform(-3.0, 3.0);
    }
    c.mu.push_back(row);
  }
  return c;
}

std::size_t random_size() { return 1 + static_cast<std::size_t>(rng()() % 4); }

FormulaCandidate single(std::vector<Elementary> row) { return FormulaCandidate{{1.0}, {std::move(row)}}; }

}  // namespace

TEST_CASE("elementary_slope examples") {
  CHECK(elementary_slope({1, 0, 0, 0, 0}, 1.0) == 1.0);
  CHECK(elementary_slope({0, 1, 0, 0, 0}, 1.0) == 0.5);
  CHECK(elementary_slope({0, 0, 0, 1, 0}, 1.0) == 2.0);
  CHECK(thrown_code([] { elementary_slope({1, 0, 0, 0, 0}, -1.0); }) == Errc::PoleAtMinusOne);
}

TEST_CASE("candidate_residual examples") {
  CHECK(candidate_residual(single({{0, 0, 0, 0, 0}}), 0.0) == 1.0);
  CHECK(candidate_residual(single({{0, 1, 0, 0, 0}, {0, 1, 0, 0, 0}}), 1.0) == 1.0);
  CHECK(candidate_residual(single({{0, 1, 0, 0, 0}}), -0.5) == 0.5);
  // No pole in the polynomial form.
  CHECK(std::isfinite(candidate_residual(single({{1, 2, 3, 4, 5}}), -1.0)));
}

TEST_CASE("malformed candidates are rejected") {
  CHECK(thrown_code([] { FormulaCandidate{{1.0, 2.0}, {{{1, 0, 0, 0, 0}}}}.n(); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { FormulaCandidate{{}, {}}.n(); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] {
          FormulaCandidate{{1.0, 1.0}, {{{1, 0, 0, 0, 0}}, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}}}.n();
        }) == Errc::InvalidSpec);
}

TEST_CASE("certificate examples") {
  const auto n1 = contradiction_certificate(single({{0, 1, 0, 0, 0}}));
  CHECK(n1.n == 1);
  CHECK(n1.gamma == -0.5);
  CHECK(n1.gap == 0.5);
  const auto n4 = contradiction_certificate(random_candidate(3, 4));
  CHECK(n4.gap == 0.0625);
  const auto zeros = contradiction_certificate(FormulaCandidate{{0.0, 0.0}, {std::vector<Elementary>(3), std::vector<Elementary>(3)}});
  CHECK(zeros.gap == 0.125);
  REQUIRE(zeros.probe_gammas.size() == 5);
  CHECK(zeros.probe_gammas.front() == 0.0);
  CHECK(zeros.probe_residuals.front() == 1.0);
  CHECK(zeros.max_probe_residual == 64.0);  // (1 + 3)^3
}

TEST_CASE("the gap at gamma = -1/2 ignores every coefficient") {
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = random_size();
    const FormulaCandidate c = random_candidate(random_size(), n);
    CHECK(std::abs(candidate_residual(c, -0.5) - std::ldexp(1.0, -static_cast<int>(n))) <= 1e-12);
  }
}

TEST_CASE("least-squares fits cannot close the residual") {
  for (std::size_t n : {1u, 2u}) {
    const FitEcho echo = least_squares_echo(n);
    CHECK(echo.gammas.size() == 20);
    CHECK(echo.gammas.front() == 0.0);
    CHECK(echo.gammas.back() == 3.0);
    CHECK(echo.max_residual >= 1e-3);
  }
  CHECK(thrown_code([] { least_squares_echo(0); }) == Errc::InvalidSpec);
}

TEST_CASE("least-squares echo bounds every random candidate") {
  // n = 2 candidates live inside the fitted family, so their residual has at
  // least the least-squares norm, and max >= norm / sqrt(samples).
  const FitEcho echo = least_squares_echo(2);
  const double floor = echo.max_residual / std::sqrt(static_cast<double>(echo.gammas.size()));
  for (int k = 0; k < 500; ++k) {
    const FormulaCandidate c = random_candidate(1 + k % 2, 2);
    double worst = 0.0;
    for (double g : echo.gammas) worst = std::max(worst, std::abs(candidate_residual(c, g)));
    CHECK(worst >= floor * (1.0 - 1e-9));
  }
}

TEST_CASE("slopes match the operators applied to quadratics") {
  for (int k = 0; k < 500; ++k) {
    const FormulaCandidate c = random_candidate(random_size(), random_size());
    const double gamma = uniform(0.0, 3.0);
    const double x = uniform(-2.0, 2.0);
    double expected = 0.0;
    for (std::size_t i = 0; i < c.m(); ++i) {
      double prod = 1.0;
      for (const Elementary& mu : c.mu[i]) prod *= elementary_slope(mu, gamma);
      expected += c.lambda[i] * prod;
    }
    expected *= x;
    const double got = apply_on_quadratics(c, gamma, x);
    CHECK(std::abs(got - expected) <= 1e-9 * (1.0 + std::abs(expected)));

    // The residual is (1 + gamma)^n (1 - (1 + 2 gamma) * slope of the candidate).
    if (x != 0.0) {
      const double s_n = std::pow(1.0 + gamma, static_cast<double>(c.n()));
      const double via_operator = s_n * (1.0 - (1.0 + 2.0 * gamma) * got / x);
      CHECK(std::abs(via_operator - candidate_residual(c, gamma)) <= 1e-6 * (1.0 + s_n * std::abs(got / x)));
    }
  }
  CHECK(thrown_code([] { apply_on_quadratics(single({{1, 0, 0, 0, 0}}), -0.5, 1.0); }) == Errc::InvalidSpec);
}

TEST_CASE("identity and prox_f act with their closed-form slopes") {
  for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
    const FormulaCandidate id = single({{1, 0, 0, 0, 0}});
    CHECK(apply_on_quadratics(id, gamma, 1.0) == 1.0);
    const FormulaCandidate pf = single({{0, 1, 0, 0, 0}});
    CHECK(std::abs(apply_on_quadratics(pf, gamma, 1.0) - 1.0 / (1.0 + gamma)) <= 1e-15);
  }
}
