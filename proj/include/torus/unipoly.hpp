#pragma once

#include <utility>
#include <vector>

#include "torus/multipoly.hpp"
#include "torus/scalar.hpp"

namespace torus {

/// Univariate polynomial in t over Q(sqrt m), coefficients in ascending degree.
class UniPoly {
 public:
  explicit UniPoly(FieldPtr field) : field_(std::move(field)) {}
  UniPoly(FieldPtr field, std::vector<Scalar> coeffs);

  /// t - root
  static UniPoly linear_root(const FieldPtr& field, const Scalar& root);

  const FieldPtr& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& leading() const { return c_.back(); }
  Scalar coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Scalar(); }

  Scalar eval(const Scalar& t) const;
  double eval(double t) const;
  std::vector<double> to_double() const;

  UniPoly derivative() const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();

  FieldPtr field_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder of Euclidean division; b must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// Yun's square-free decomposition: u = lc * prod s_i^i, returned as {s_1, s_2, ...}.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& u);
/// Multiplicity of an exact root (0 when not a root).
int root_multiplicity(const UniPoly& u, const Scalar& root);

/// One group of p(x, t*x, z) = sum x^x_power z^z_power * coeff(t).
struct LineRestriction {
  int x_power = 0;
  int z_power = 0;
  UniPoly coeff;
};

/// Substitutes y := t*x and groups by (x power, z power). p is divisible by
/// (y - t0*x) iff every coeff vanishes at t0; p is divisible by x^k iff
/// x_power - deg(coeff) >= k for every group.
std::vector<LineRestriction> restrict_to_line(const MultiPoly& p);

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots of u in [lo, hi] with multiplicities. Multiplicities come from
/// the square-free decomposition; each square-free factor is isolated with a
/// Sturm sequence on its double embedding and refined by bisection to 1e-12.
/// Throws IllConditioned when Sturm signs cannot be resolved (|value| < 1e-9
/// relative to the chain scale).
std::vector<RealRoot> real_roots(const UniPoly& u, double lo, double hi);

/// Cauchy bound: every complex root lies in |t| <= bound.
double root_bound(const UniPoly& u);

struct ExactRoot {
  Scalar value;
  int multiplicity = 1;
};

/// Real roots in [lo, hi] of the form r or r*sqrt(m) with r rational,
/// certified by exact evaluation.
std::vector<ExactRoot> exact_roots(const UniPoly& u, double lo, double hi);

}  // namespace torus
