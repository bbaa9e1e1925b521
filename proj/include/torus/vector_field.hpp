#pragma once

#include <optional>

#include "torus/multipoly.hpp"

namespace torus {

/// chi = P d/dx + Q d/dy + R d/dz.
struct VectorField {
  MultiPoly P, Q, R;

  VectorField(MultiPoly p, MultiPoly q, MultiPoly r);

  const FieldPtr& field() const { return P.field(); }
  /// max(deg P, deg Q, deg R); kZeroDegree for the zero field.
  int degree() const;
  bool is_zero() const { return P.is_zero() && Q.is_zero() && R.is_zero(); }

  MultiPoly& operator[](int i) { return i == 0 ? P : (i == 1 ? Q : R); }
  const MultiPoly& operator[](int i) const { return i == 0 ? P : (i == 1 ? Q : R); }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.P + b.P, a.Q + b.Q, a.R + b.R};
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    return {a.P - b.P, a.Q - b.Q, a.R - b.R};
  }
  friend VectorField operator*(const Scalar& c, const VectorField& a) { return {c * a.P, c * a.Q, c * a.R}; }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.P == b.P && a.Q == b.Q && a.R == b.R;
  }
};

/// The torus (x^2 + y^2 - m)^2 + z^2 - 1 = 0 with m = a^2 > 1.
class TorusSurface {
 public:
  /// Throws std::invalid_argument unless m > 1.
  explicit TorusSurface(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const Rational& m() const { return field_->m(); }
  const MultiPoly& F() const { return F_; }
  /// x^2 + y^2 - m
  const MultiPoly& radial() const { return radial_; }

 private:
  FieldPtr field_;
  MultiPoly radial_;
  MultiPoly F_;
};

struct CofactorResult {
  bool on_torus = false;
  std::optional<MultiPoly> K;
};

/// num / den with den != 0.
struct RationalFn {
  MultiPoly num, den;

  RationalFn(MultiPoly n, MultiPoly d);
  static RationalFn polynomial(MultiPoly n);
};

/// chi(f) = P f_x + Q f_y + R f_z.
MultiPoly apply(const VectorField& chi, const MultiPoly& f);

/// Exact invariance test chi(F) = K F by division along z.
CofactorResult cofactor_on_torus(const VectorField& chi, const TorusSurface& torus);

/// [X, Y]_i = X(Y_i) - Y(X_i).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// True iff chi(H) = 0, i.e. den * chi(num) - num * chi(den) vanishes identically.
bool check_first_integral(const VectorField& chi, const RationalFn& H);

/// Cofactor of {f = 0} when f is monic in z (leading z-coefficient a nonzero
/// scalar) or a meridian form a*x + b*y. Throws UnsupportedShape otherwise.
CofactorResult invariant_surface_cofactor(const VectorField& chi, const MultiPoly& f);

}  // namespace torus
