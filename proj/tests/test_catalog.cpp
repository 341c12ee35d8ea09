#include "doctest.h"

#include <cmath>

#include "proxcalc/catalog.hpp"
#include "proxcalc/oracle.hpp"
#include "test_support.hpp"

using namespace proxcalc;
using catalog::CatalogSpec;
using proxcalc::testing::catalog_entries;
using proxcalc::testing::catalog_entries_2d;
using proxcalc::testing::random_point;
using proxcalc::testing::thrown_code;
using proxcalc::testing::uniform;

TEST_CASE("build examples") {
  const auto box = catalog::build(CatalogSpec::indicator_box({-1.0}, {1.0}));
  CHECK(prox_eval(box, Point{2.0})[0] == 1.0);
  CHECK(box.value(Point{2.0}) == kInf);
  CHECK(box.value(Point{0.3}) == 0.0);

  const auto abs = catalog::build(CatalogSpec::abs());
  const auto s = abs.subdiff1d(0.0);
  CHECK(s.lo() == -1.0);
  CHECK(s.hi() == 1.0);
  CHECK(abs.prox_range_box().has_value());

  const auto quad = catalog::build(CatalogSpec::quadratic(1.0));
  for (double x : {-4.0, 0.0, 3.0, 7.5}) CHECK(prox_eval(quad, Point{x})[0] == doctest::Approx(x / 2.0).epsilon(1e-15));
}

TEST_CASE("kind names round-trip") {
  using catalog::Kind;
  for (Kind k : {Kind::IndicatorBox, Kind::IndicatorPoint, Kind::IndicatorHalfline, Kind::Abs, Kind::L1,
                 Kind::Quadratic, Kind::Linear, Kind::Zero, Kind::NegSqrtOnHalfline}) {
    CHECK(catalog::kind_from_name(catalog::kind_name(k)) == k);
  }
  CHECK(thrown_code([] { catalog::kind_from_name("huber"); }) == Errc::InvalidSpec);
}

TEST_CASE("invalid specs are rejected") {
  CHECK(thrown_code([] { catalog::build(CatalogSpec::indicator_box({1.0}, {0.0})); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { catalog::build(CatalogSpec::indicator_box({1.0, 2.0}, {3.0})); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { catalog::build(CatalogSpec::quadratic(-1.0)); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { catalog::build(CatalogSpec::indicator_point({})); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { catalog::quadratic_form({{1.0, 2.0}, {0.0, 1.0}}); }) == Errc::InvalidSpec);
  CHECK(thrown_code([] { catalog::quadratic_form({{1.0, 0.0}, {0.0, -1.0}}); }) == Errc::InvalidSpec);
}

TEST_CASE("conjugate_prox examples") {
  CHECK(catalog::conjugate_prox(catalog::build(CatalogSpec::abs()), Point{2.0})[0] == 1.0);
  CHECK(catalog::conjugate_prox(catalog::build(CatalogSpec::zero()), Point{5.0})[0] == 0.0);
  CHECK(catalog::conjugate_prox(catalog::build(CatalogSpec::quadratic(1.0)), Point{3.0})[0] == 1.5);
  CHECK(thrown_code([] { catalog::conjugate_prox(catalog::build(CatalogSpec::abs()), Point{1.0, 1.0}); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("moreau_envelope examples") {
  CHECK(catalog::moreau_envelope(catalog::build(CatalogSpec::indicator_box({-1.0}, {1.0})), Point{2.0}) == 0.5);
  CHECK(catalog::moreau_envelope(catalog::build(CatalogSpec::zero()), Point{7.0}) == 0.0);
  CHECK(catalog::moreau_envelope(catalog::build(CatalogSpec::abs()), Point{2.0}) == 1.5);

  // A prox that leaves the domain is an inconsistent implementation.
  ConvexFunctionParts parts;
  parts.name = "bad";
  parts.dim = 1;
  parts.value = [](const Point& x) { return x[0] > 0.0 ? kInf : 0.0; };
  parts.prox = [](const Point& x, double) { return x; };
  parts.subdiff1d = [](double) { return SubdifferentialInterval::singleton(0.0); };
  CHECK(thrown_code([&] { catalog::moreau_envelope(ConvexFunction(parts), Point{1.0}); }) == Errc::InfiniteValue);
}

TEST_CASE("envelope matches a grid minimization") {
  const auto abs = catalog::build(CatalogSpec::abs());
  for (double x : {-3.0, -0.4, 0.0, 0.8, 2.0}) {
    double best = kInf;
    for (int i = 0; i <= 200000; ++i) {
      const double z = -5.0 + i * 5e-5;
      best = std::min(best, std::abs(z) + 0.5 * (z - x) * (z - x));
    }
    CHECK(std::abs(catalog::moreau_envelope(abs, Point{x}) - best) <= 1e-8);
  }
}

TEST_CASE("Moreau decomposition against closed-form conjugates") {
  auto check_entry = [](const auto& e) {
    if (!e.conjugate) return;
    CAPTURE(e.label);
    const ConvexFunction g = catalog::build(e.spec);
    const ConvexFunction gs = catalog::build(*e.conjugate);
    for (int k = 0; k < 1000; ++k) {
      const Point x = random_point(g.dim());
      const Point p = prox_eval(g, x);
      const Point q = catalog::conjugate_prox(g, x);
      CHECK(distance(p + q, x) <= 1e-12);
      CHECK(distance(q, prox_eval(gs, x)) <= 1e-10);
      const double lhs = catalog::moreau_envelope(g, x) + catalog::moreau_envelope(gs, x);
      CHECK(std::abs(lhs - 0.5 * dot(x, x)) <= 1e-10);
      CHECK(std::abs(catalog::conjugate_envelope(g, x) - catalog::moreau_envelope(gs, x)) <= 1e-10);
    }
  };
  for (const auto& e : catalog_entries()) check_entry(e);
  for (const auto& e : catalog_entries_2d()) check_entry(e);
}

TEST_CASE("conjugate prox agrees with a brute-force prox of the conjugate") {
  for (const auto& e : catalog_entries()) {
    if (!e.conjugate) continue;
    CAPTURE(e.label);
    const ConvexFunction g = catalog::build(e.spec);
    const oracle::Target gs = oracle::target_of(catalog::build(*e.conjugate));
    for (int k = 0; k < 50; ++k) {
      const Point x = random_point(1);
      CHECK(distance(catalog::conjugate_prox(g, x), oracle::oracle_prox(gs, x).argmin) <= 1e-6);
    }
  }
}

TEST_CASE("gradient of the conjugate envelope is the prox") {
  const double h = 1e-6;
  auto entries = catalog_entries();
  entries.push_back({"neg_sqrt", CatalogSpec::neg_sqrt_on_halfline(), std::nullopt, std::nullopt});
  for (const auto& e : entries) {
    CAPTURE(e.label);
    const ConvexFunction g = catalog::build(e.spec);
    for (int k = 0; k < 200; ++k) {
      const double x = uniform(-5.0, 5.0);
      const double fd = (catalog::conjugate_envelope(g, Point{x + h}) - catalog::conjugate_envelope(g, Point{x - h})) /
                        (2.0 * h);
      CHECK(std::abs(fd - prox_eval(g, Point{x})[0]) <= 1e-5);
    }
  }
}

TEST_CASE("subgradients are exactly the prox displacements") {
  auto entries = catalog_entries();
  entries.push_back({"neg_sqrt", CatalogSpec::neg_sqrt_on_halfline(), std::nullopt, std::nullopt});
  const std::vector<double> special{0.0, 1.0, -1.0, 0.5, 2.0, 1.5, 0.7};
  for (const auto& e : entries) {
    CAPTURE(e.label);
    const ConvexFunction g = catalog::build(e.spec);
    for (int k = 0; k < 2000; ++k) {
      double x = k % 3 == 0 ? special[static_cast<std::size_t>(k / 3) % special.size()] : uniform(-4.0, 4.0);
      x = g.domain_box()[0].clamp(x);
      const auto s = g.subdiff1d(x);
      double y = uniform(-4.0, 4.0);
      // Bias half the samples into the subdifferential.
      if (k % 2 == 0 && !s.is_empty()) {
        const double lo = std::max(s.lo(), -10.0);
        const double hi = std::min(s.hi(), 10.0);
        y = lo + uniform(0.0, 1.0) * (hi - lo);
      }
      const double moved = std::abs(prox_eval(g, Point{x + y})[0] - x);
      if (s.contains(y)) {
        CHECK(moved <= 1e-8);
      } else if (!s.contains(y, 1e-6)) {
        CHECK(moved > 1e-8);
      }
    }
  }
}

TEST_CASE("prox range boxes contain every prox output") {
  for (const auto& e : catalog_entries()) {
    const ConvexFunction g = catalog::build(e.spec);
    if (!g.prox_range_box()) continue;
    CAPTURE(e.label);
    for (int k = 0; k < 500; ++k) {
      CHECK(box_contains(*g.prox_range_box(), prox_eval(g, random_point(1, -20.0, 20.0)), 1e-12));
    }
  }
}

TEST_CASE("quadratic form prox solves the linear system") {
  const auto q = catalog::quadratic_form({{2.0, 0.5}, {0.5, 1.0}});
  CHECK(q.gradient_lipschitz().value() == doctest::Approx(1.5 + std::sqrt(0.5)));
  for (int k = 0; k < 100; ++k) {
    const Point x = random_point(2);
    const double step = uniform(0.1, 2.0);
    const Point p = prox_eval(q, x, step);
    // p + step H p = x
    const Point back = p + step * q.gradient(p);
    CHECK(distance(back, x) <= 1e-12 * (1.0 + norm(x)));
  }
}

TEST_CASE("smooth entries expose consistent gradients and Hessians") {
  const auto q = catalog::build(CatalogSpec::shifted_quadratic(2.0, {1.0, -1.0}));
  const Point x{0.3, 0.4};
  const double h = 1e-6;
  for (std::size_t i = 0; i < 2; ++i) {
    Point e = Point::zeros(2);
    e.at_mut(i) = h;
    const double fd = (q.value(x + e) - q.value(x - e)) / (2.0 * h);
    CHECK(std::abs(fd - q.gradient(x)[i]) <= 1e-8);
  }
  CHECK(q.hessian_apply(x, Point{1.0, 2.0}) == Point{2.0, 4.0});
  CHECK(q.gradient_lipschitz().value() == 2.0);
}
