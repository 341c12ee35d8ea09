#include "proxcalc/point.hpp"

#include <cmath>
#include <sstream>

#include "proxcalc/error.hpp"

namespace proxcalc {

namespace {

void check_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimensionMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace

Point::Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(Errc::NonFiniteEntry, "point coordinate is not finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0), Unchecked{}); }

Point Point::filled(std::size_t dim, double value) {
  if (!std::isfinite(value)) throw Error(Errc::NonFiniteEntry, "fill value is not finite");
  return Point(std::vector<double>(dim, value), Unchecked{});
}

Point& Point::operator+=(const Point& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i];
  }
  os << ']';
  return os.str();
}

Point make_point(std::span<const double> coords) { return Point(coords); }

double dot(const Point& a, const Point& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) {
  double s = 0.0;
  for (double c : a.coords()) s += c * c;
  return std::sqrt(s);
}

double distance(const Point& a, const Point& b) { return norm(a - b); }

void require_dim(const Point& a, std::size_t expected, const char* what) {
  if (a.dim() != expected) {
    throw Error(Errc::DimensionMismatch, std::string(what) + " has dimension " +
                                             std::to_string(a.dim()) + ", expected " +
                                             std::to_string(expected));
  }
}

}  // namespace proxcalc
