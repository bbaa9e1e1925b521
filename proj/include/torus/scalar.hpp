#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

namespace torus {

using Rational = mpq_class;

/// Parses "n" or "n/d" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Element p + q*sqrt(m) of Q(sqrt m).
///
/// Equality is structural (componentwise). When m is a perfect square two
/// structurally different scalars may denote the same real number; the
/// toolkit never tries to detect that.
struct Scalar {
  Rational p{0};
  Rational q{0};

  Scalar() = default;
  Scalar(long v) : p(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational rational) : p(std::move(rational)) {}  // NOLINT
  Scalar(Rational rational, Rational root_part) : p(std::move(rational)), q(std::move(root_part)) {}

  /// The scalar sqrt(m), i.e. the torus radius a.
  static Scalar root() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(p) == 0 && sgn(q) == 0; }
  bool is_rational() const { return sgn(q) == 0; }
  bool is_one() const { return is_rational() && p == 1; }

  Scalar& operator+=(const Scalar& o) {
    p += o.p;
    q += o.q;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    p -= o.p;
    q -= o.q;
    return *this;
  }
  Scalar& operator*=(const Rational& r) {
    p *= r;
    q *= r;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.p, -a.q); }
  friend Scalar operator*(Scalar a, const Rational& r) { return a *= r; }
  friend Scalar operator*(const Rational& r, Scalar a) { return a *= r; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

/// The quadratic field Q(sqrt m). Immutable; shared between every polynomial
/// built for the same torus.
class Field {
 public:
  /// Throws std::invalid_argument unless m > 0.
  explicit Field(Rational m);

  static std::shared_ptr<const Field> make(const Rational& m) {
    return std::make_shared<const Field>(m);
  }

  const Rational& m() const { return m_; }
  double m_double() const { return m_double_; }
  double sqrt_m() const { return sqrt_m_; }
  /// True when sqrt(m) is rational; structural equality then over-distinguishes.
  bool m_is_square() const { return m_is_square_; }

  /// For square m, the rational with the same real value; otherwise a itself.
  Scalar real_form(const Scalar& a) const;

  Scalar mul(const Scalar& a, const Scalar& b) const;
  /// Throws ZeroDivisor for a == 0 or a zero divisor (square m only).
  Scalar inverse(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inverse(b)); }
  /// Exact sign of the real number p + q*sqrt(m).
  int sign(const Scalar& a) const;
  double to_double(const Scalar& a) const;

 private:
  Rational m_;
  double m_double_;
  double sqrt_m_;
  bool m_is_square_;
  Rational root_;  // sqrt(m) when m is a square
};

using FieldPtr = std::shared_ptr<const Field>;

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && a->m() == b->m());
}

/// Canonical text of a scalar in the expression grammar ("3", "1/4", "2*a", "1 - 2*a").
std::string to_string(const Scalar& s);

}  // namespace torus
