#include "doctest.h"

#include <cmath>
#include <sstream>

#include "proxcalc/catalog.hpp"
#include "proxcalc/oracle.hpp"
#include "test_support.hpp"

using namespace proxcalc;
using catalog::CatalogSpec;
using catalog::HalflineSide;
using proxcalc::testing::catalog_entries;
using proxcalc::testing::catalog_entries_2d;
using proxcalc::testing::random_point;
using proxcalc::testing::thrown_code;
using proxcalc::testing::uniform;

namespace {

using catalog::build;

FproxProblem ex2_pair() { return FproxProblem(build(CatalogSpec::indicator_point({0.0})), build(CatalogSpec::abs())); }
FproxProblem ex2bis_pair() { return FproxProblem(build(CatalogSpec::abs()), build(CatalogSpec::abs())); }
FproxProblem ex3_pair() {
  return FproxProblem(build(CatalogSpec::indicator_halfline(HalflineSide::NonPositive)),
                      build(CatalogSpec::neg_sqrt_on_halfline()));
}

}  // namespace

TEST_CASE("oracle_prox examples") {
  const ConvexFunction abs = build(CatalogSpec::abs());
  const auto ex2 = oracle::oracle_prox(oracle::sum_of(build(CatalogSpec::indicator_point({0.0})), abs), Point{2.0});
  CHECK(std::abs(ex2.argmin[0]) <= 1e-6);

  const auto ex2bis = oracle::oracle_prox(oracle::sum_of(abs, abs), Point{3.0});
  CHECK(std::abs(ex2bis.argmin[0] - 1.0) <= 1e-6);
  CHECK(ex2bis.grid_step <= 1e-2);

  const ConvexFunction q = build(CatalogSpec::quadratic(1.0));
  const auto ex9809 = oracle::oracle_prox(oracle::sum_of(q, q), Point{3.0});
  CHECK(std::abs(ex9809.argmin[0] - 1.0) <= 1e-6);
}

TEST_CASE("oracle_prox errors") {
  oracle::Target nowhere{[](const Point&) { return kInf; }, full_box(1)};
  CHECK(thrown_code([&] { oracle::oracle_prox(nowhere, Point{0.0}); }) == Errc::UnboundedSearch);
  const auto zero4 = oracle::target_of(build(CatalogSpec::zero(4)));
  CHECK(thrown_code([&] { oracle::oracle_prox(zero4, Point::zeros(4)); }) == Errc::DimensionMismatch);
  CHECK(thrown_code([] {
          oracle::sum_of(build(CatalogSpec::indicator_box({0.0}, {1.0})), build(CatalogSpec::indicator_box({2.0}, {3.0})));
        }) == Errc::InvalidSpec);
}

TEST_CASE("oracle agrees with every closed-form prox") {
  auto entries = catalog_entries();
  entries.push_back({"neg_sqrt", CatalogSpec::neg_sqrt_on_halfline(), std::nullopt, std::nullopt});
  for (const auto& e : entries) {
    CAPTURE(e.label);
    const ConvexFunction g = build(e.spec);
    const oracle::Target t = oracle::target_of(g);
    for (int k = 0; k < 200; ++k) {
      const Point x = random_point(1);
      CHECK(distance(oracle::oracle_prox(t, x).argmin, prox_eval(g, x)) <= 1e-6);
    }
  }
  for (const auto& e : catalog_entries_2d()) {
    CAPTURE(e.label);
    const ConvexFunction g = build(e.spec);
    const oracle::Target t = oracle::target_of(g);
    for (int k = 0; k < 20; ++k) {
      const Point x = random_point(2);
      CHECK(distance(oracle::oracle_prox(t, x).argmin, prox_eval(g, x)) <= 1e-6);
    }
  }
}

TEST_CASE("prox of a sum lands in both prox ranges") {
  const auto entries = catalog_entries();
  for (const auto& ef : entries) {
    for (const auto& eg : entries) {
      const ConvexFunction f = build(ef.spec);
      const ConvexFunction g = build(eg.spec);
      if (!f.prox_range_box() || !g.prox_range_box()) continue;
      if (!intersect(f.domain_box(), g.domain_box())) continue;
      const FproxProblem p(f, g);
      if (!check_additivity(p).holds) continue;
      CAPTURE(ef.label);
      CAPTURE(eg.label);
      const oracle::Target h = oracle::sum_of(f, g);
      for (int k = 0; k < 10; ++k) {
        const Point z = oracle::oracle_prox(h, random_point(1)).argmin;
        CHECK(box_contains(*f.prox_range_box(), z, 1e-6));
        CHECK(box_contains(*g.prox_range_box(), z, 1e-6));
      }
    }
  }
}

TEST_CASE("range inclusion fails without additivity") {
  const FproxProblem p = ex3_pair();
  CHECK(!check_additivity(p).holds);
  // dom(f+g) = {0}, so prox_{f+g} is identically 0 ...
  const auto h = oracle::sum_of(p.f(), p.g());
  for (double x : {-2.0, 0.0, 0.5, 3.0}) CHECK(std::abs(oracle::oracle_prox(h, Point{x}).argmin[0]) <= 1e-8);
  // ... yet 0 is not a prox_g value: every grid input maps strictly inside (0, inf).
  const oracle::Grid grid{-5.0, 5.0, 1e-3};
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(prox_eval(p.g(), Point{grid.at(i)})[0] > 0.0);
}

TEST_CASE("set oracle examples") {
  const oracle::Grid grid{-5.0, 5.0, 1e-3};
  const auto s2 = oracle::fprox_set_oracle(ex2_pair(), 2.0, grid);
  REQUIRE(!s2.set.is_empty());
  CHECK(std::abs(s2.set.lo() - 1.0) <= 1e-3);
  CHECK(std::abs(s2.set.hi() - 3.0) <= 1e-3);
  CHECK(s2.grid_step == 1e-3);
  CHECK(s2.inflation == oracle::kDefaultInflation);

  const auto s2bis = oracle::fprox_set_oracle(ex2bis_pair(), 1.0, grid);
  REQUIRE(!s2bis.set.is_empty());
  CHECK(std::abs(s2bis.set.lo() - 0.0) <= 1e-3);
  CHECK(std::abs(s2bis.set.hi() - 1.0) <= 1e-3);

  CHECK(oracle::fprox_set_oracle(ex3_pair(), 0.0, grid).set.is_empty());
}

TEST_CASE("set oracle rejects bad grids and dimensions") {
  CHECK(thrown_code([] { oracle::fprox_set_oracle(ex2_pair(), 0.0, oracle::Grid{0.0, 1.0, 0.0}); }) ==
        Errc::InvalidSpec);
  CHECK(thrown_code([] { oracle::fprox_set_oracle(ex2_pair(), 0.0, oracle::Grid{1.0, 0.0, 0.1}); }) ==
        Errc::InvalidSpec);
  const FproxProblem p2(build(CatalogSpec::l1(2)), build(CatalogSpec::zero(2)));
  CHECK(thrown_code([&] { oracle::fprox_set_oracle(p2, 0.0, oracle::Grid{}); }) == Errc::DimensionMismatch);
}

TEST_CASE("set oracle with a non-convex answer raises InternalError") {
  // A deliberately broken "subdifferential" holding two separate slopes.
  ConvexFunctionParts parts;
  parts.name = "broken";
  parts.dim = 1;
  parts.value = [](const Point&) { return 0.0; };
  parts.prox = [](const Point& x, double) { return x; };
  parts.subdiff1d = [](double y) {
    return std::abs(y) > 1.0 && std::abs(y) < 2.0 ? SubdifferentialInterval::singleton(-y)
                                                  : SubdifferentialInterval::empty();
  };
  const FproxProblem p(build(CatalogSpec::zero()), ConvexFunction(parts));
  CHECK(thrown_code([&] { oracle::fprox_set_oracle(p, 0.0, oracle::Grid{-3.0, 3.0, 0.01}); }) ==
        Errc::InternalError);
}

TEST_CASE("set oracle answers are intervals for every additive pair") {
  const auto entries = catalog_entries();
  const oracle::Grid grid{-8.0, 8.0, 1e-2};
  for (const auto& ef : entries) {
    for (const auto& eg : entries) {
      const ConvexFunction f = build(ef.spec);
      const ConvexFunction g = build(eg.spec);
      if (!intersect(f.domain_box(), g.domain_box())) continue;
      const FproxProblem p(f, g);
      if (!check_additivity(p).holds) continue;
      CAPTURE(ef.label);
      CAPTURE(eg.label);
      for (double x : {-1.7, 0.0, 0.4, 2.3}) {
        // Throws InternalError on a gap. The inflation covers singleton sets
        // that fall between grid points.
        const auto s = oracle::fprox_set_oracle(p, x, grid, 0.05);
        CHECK(!s.set.is_empty());
      }
    }
  }
}

TEST_CASE("figure data for the zero-f pair collapses to the soft-threshold graph") {
  const FproxProblem p(build(CatalogSpec::zero()), build(CatalogSpec::abs()));
  const auto rows = oracle::figure_data(p, oracle::Grid{-3.0, 3.0, 0.5}, oracle::Grid{-6.0, 6.0, 1e-3});
  CHECK(rows.size() == 13);
  for (const auto& r : rows) {
    CHECK(std::abs(r.set_lo - r.prox_g) <= 1e-3 + 1e-9);
    CHECK(std::abs(r.set_hi - r.prox_g) <= 1e-3 + 1e-9);
    CHECK(r.prox_g == proxcalc::testing::soft(r.x));
  }
}

TEST_CASE("figure csv layout") {
  std::vector<oracle::FigureRow> rows{{0.1, -0.9, 1.1, 0.0}, {0.2, std::nan(""), std::nan(""), 0.0}};
  const std::string csv = oracle::figure_csv(rows);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,set_lo,set_hi,prox_g");
  std::getline(is, line);
  CHECK(line == "0.10000000000000001,-0.90000000000000002,1.1000000000000001,0");
  std::getline(is, line);
  CHECK(line.rfind("0.20000000000000001,", 0) == 0);
}

TEST_CASE("grid indexing") {
  const oracle::Grid g{-3.0, 3.0, 0.01};
  CHECK(g.size() == 601);
  CHECK(g.at(0) == -3.0);
  CHECK(std::abs(g.at(600) - 3.0) <= 1e-12);
}
