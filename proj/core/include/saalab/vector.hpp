#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace saalab {

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

class NonFiniteValue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dense real vector of fixed dimension. All arithmetic rejects mismatched
// dimensions; constructors and arithmetic reject NaN/Inf components.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);
  explicit Vector(std::span<const double> values);

  std::size_t dim() const noexcept { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> span() const noexcept { return data_; }
  std::span<double> span() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(double s);

  bool operator==(const Vector& rhs) const = default;

  bool all_finite() const noexcept;
  // Throws NonFiniteValue naming `what` if any component is NaN/Inf.
  void require_finite(const char* what) const;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);
Vector operator*(Vector v, double s);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);
double squared_norm(const Vector& v);
double max_abs_diff(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

// 2x2 real matrix, row-major.
struct Matrix2 {
  std::array<double, 4> m{};

  double operator()(std::size_t r, std::size_t c) const { return m[2 * r + c]; }

  static Matrix2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  // a*I + b*J with J = ((0,-1),(1,0)).
  static Matrix2 scaled_rotation(double a, double b) { return {{a, -b, b, a}}; }

  Vector apply(const Vector& x) const;
};

}  // namespace saalab
