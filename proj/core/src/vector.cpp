#include "saalab/vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace saalab {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) +
                            " vs " + std::to_string(rhs)) {}

namespace {

void check_dims(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

}  // namespace

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill) {
  require_finite("Vector fill");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite("Vector");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_finite("Vector");
}

Vector::Vector(std::span<const double> values)
    : data_(values.begin(), values.end()) {
  require_finite("Vector");
}

Vector& Vector::operator+=(const Vector& rhs) {
  check_dims(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  require_finite("Vector sum");
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  check_dims(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  require_finite("Vector difference");
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& x : data_) x *= s;
  require_finite("Vector scaling");
  return *this;
}

bool Vector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

void Vector::require_finite(const char* what) const {
  if (!all_finite()) {
    throw NonFiniteValue(std::string(what) + " has a non-finite component");
  }
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double s, Vector v) { return v *= s; }
Vector operator*(Vector v, double s) { return v *= s; }

double dot(const Vector& a, const Vector& b) {
  check_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const Vector& v) { return dot(v, v); }

double norm(const Vector& v) {
  double acc = 0.0;
  for (double x : v.values()) acc = std::hypot(acc, x);
  return acc;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  check_dims(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < v.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

Vector Matrix2::apply(const Vector& x) const {
  if (x.dim() != 2) throw DimensionMismatch(2, x.dim());
  return Vector{m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]};
}

}  // namespace saalab
