#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace proxcalc {

/// A vector of R^n. Entries are finite at construction and the dimension
/// never changes afterwards.
class Point {
 public:
  Point() = default;
  explicit Point(std::span<const double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);
  static Point filled(std::size_t dim, double value);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  // Mutable element access for algorithm internals. Callers must keep the
  // entries finite.
  double& at_mut(std::size_t i) { return coords_[i]; }

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }

  bool operator==(const Point&) const = default;

  std::string to_string() const;

 private:
  struct Unchecked {};
  Point(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

/// Throws Errc::NonFiniteEntry on NaN/Inf.
Point make_point(std::span<const double> coords);
inline Point make_point(std::initializer_list<double> coords) {
  return make_point(std::span<const double>(coords.begin(), coords.size()));
}

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

/// Throws Errc::DimensionMismatch unless a.dim() == expected.
void require_dim(const Point& a, std::size_t expected, const char* what);

}  // namespace proxcalc
