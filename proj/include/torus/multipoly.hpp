#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "torus/scalar.hpp"

namespace torus {

enum class Var { X = 0, Y = 1, Z = 2 };

/// Exponent triple x^i y^j z^k.
struct Monomial {
  std::array<int, 3> e{0, 0, 0};

  Monomial() = default;
  Monomial(int i, int j, int k) : e{i, j, k} {}

  int degree() const { return e[0] + e[1] + e[2]; }
  int operator[](Var v) const { return e[static_cast<int>(v)]; }
  int& operator[](Var v) { return e[static_cast<int>(v)]; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]};
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with x > y > z; true when a sorts before b.
inline bool grlex_before(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;
}

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Degree reported for the zero polynomial; stands in for minus infinity.
inline constexpr int kZeroDegree = -1;

/// Sparse polynomial in x, y, z over Q(sqrt m).
///
/// Terms are kept in graded lexicographic order with no zero coefficients,
/// so the representation is canonical and equality is structural.
class MultiPoly {
 public:
  explicit MultiPoly(FieldPtr field) : field_(std::move(field)) {}
  MultiPoly(FieldPtr field, std::vector<Term> terms);

  static MultiPoly constant(const FieldPtr& field, const Scalar& c);
  static MultiPoly variable(const FieldPtr& field, Var v);
  static MultiPoly monomial(const FieldPtr& field, const Scalar& c, const Monomial& m);

  const FieldPtr& field() const { return field_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }
  /// Total degree, kZeroDegree for the zero polynomial.
  int degree() const { return terms_.empty() ? kZeroDegree : terms_.front().mono.degree(); }
  int degree_in(Var v) const;
  bool is_homogeneous() const;

  Scalar coeff(const Monomial& m) const;
  /// Constant term (coefficient of 1).
  Scalar constant_term() const { return coeff(Monomial{}); }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Scalar& c, const MultiPoly& a);
  friend MultiPoly operator*(const MultiPoly& a, const Scalar& c) { return c * a; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(int k) const;

 private:
  void check_field(const MultiPoly& o) const;

  FieldPtr field_;
  std::vector<Term> terms_;
};

MultiPoly differentiate(const MultiPoly& p, Var v);
MultiPoly homogeneous_component(const MultiPoly& p, int d);
/// Formal composition p|_{v := q}.
MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& q);

/// Multiplies p by a monomial.
MultiPoly shift(const MultiPoly& p, const Monomial& m);
/// p / v when every term of p contains v, nullopt otherwise.
std::optional<MultiPoly> divide_by_variable(const MultiPoly& p, Var v);

/// Coefficient of v^k when p is viewed as a polynomial in v.
MultiPoly coefficient_in(const MultiPoly& p, Var v, int k);

using ExactPoint = std::array<Scalar, 3>;

Scalar eval_exact(const MultiPoly& p, const ExactPoint& pt);
double eval_float(const MultiPoly& p, const Eigen::Vector3d& pt);

/// Exact quotient dividend / divisor along variable v. The leading
/// v-coefficient of the divisor must be a nonzero scalar (MalformedDivisor
/// otherwise). Returns nullopt when the remainder is nonzero.
std::optional<MultiPoly> divide_exact(const MultiPoly& dividend, const MultiPoly& divisor, Var v);

inline std::optional<MultiPoly> divide_exact_z(const MultiPoly& dividend, const MultiPoly& divisor) {
  return divide_exact(dividend, divisor, Var::Z);
}

/// Double-precision snapshot of a polynomial for fast repeated evaluation.
class FloatPoly {
 public:
  FloatPoly() = default;
  explicit FloatPoly(const MultiPoly& p);

  double operator()(const Eigen::Vector3d& pt) const;
  double operator()(double x, double y, double z) const { return (*this)(Eigen::Vector3d(x, y, z)); }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::vector<double> coeffs_;
  std::vector<Monomial> monos_;
  int degree_ = kZeroDegree;
};

}  // namespace torus
