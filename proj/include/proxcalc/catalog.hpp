#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "proxcalc/core.hpp"

namespace proxcalc::catalog {

enum class Kind {
  IndicatorBox,
  IndicatorPoint,
  IndicatorHalfline,
  Abs,
  L1,
  Quadratic,
  Linear,
  Zero,
  NegSqrtOnHalfline,
};

std::string_view kind_name(Kind kind) noexcept;
/// Throws Errc::InvalidSpec for unknown names.
Kind kind_from_name(std::string_view name);

enum class HalflineSide { NonNegative, NonPositive };

/// Parameters of a closed-form catalog entry. Only the fields relevant to
/// `kind` are read:
///   IndicatorBox       lo, hi
///   IndicatorPoint     at
///   IndicatorHalfline  side, origin           (1D)
///   Abs                -                      (1D)
///   L1                 dim
///   Quadratic          gamma, center or dim   (gamma/2 |x - center|^2)
///   Linear             slope                  (<slope, x>)
///   Zero               dim
///   NegSqrtOnHalfline  -                      (1D, -sqrt(x) on x >= 0)
struct CatalogSpec {
  Kind kind = Kind::Zero;
  std::size_t dim = 1;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> at;
  HalflineSide side = HalflineSide::NonNegative;
  double origin = 0.0;
  double gamma = 1.0;
  std::vector<double> center;
  std::vector<double> slope;

  static CatalogSpec indicator_box(std::vector<double> lo, std::vector<double> hi);
  static CatalogSpec indicator_point(std::vector<double> at);
  static CatalogSpec indicator_halfline(HalflineSide side, double origin = 0.0);
  static CatalogSpec abs();
  static CatalogSpec l1(std::size_t dim);
  static CatalogSpec quadratic(double gamma, std::size_t dim = 1);
  static CatalogSpec shifted_quadratic(double gamma, std::vector<double> center);
  static CatalogSpec linear(std::vector<double> slope);
  static CatalogSpec zero(std::size_t dim = 1);
  static CatalogSpec neg_sqrt_on_halfline();

  /// Dimension implied by the kind-specific parameters.
  std::size_t effective_dim() const;
  /// Throws Errc::InvalidSpec when a kind-specific constraint fails.
  void validate() const;
};

ConvexFunction build(const CatalogSpec& spec);

/// (1/2) <H x, x> for a symmetric positive semidefinite H given row-major.
/// Used for second-order models of smooth functions.
ConvexFunction quadratic_form(std::vector<std::vector<double>> hessian);

/// x - prox_g(x), i.e. the prox of the conjugate g* at x.
Point conjugate_prox(const ConvexFunction& g, const Point& x);

/// M_g(x) = g(p) + |x - p|^2 / 2 with p = prox_g(x).
/// Throws Errc::InfiniteValue if g(p) is not finite.
double moreau_envelope(const ConvexFunction& g, const Point& x);

/// M_{g*}(x), computed from the Fenchel-Young equality at the pair
/// (prox_g(x), x - prox_g(x)) without evaluating g* itself.
double conjugate_envelope(const ConvexFunction& g, const Point& x);

}  // namespace proxcalc::catalog
