#pragma once

#include <random>
#include <vector>

#include "torus/families.hpp"
#include "torus/multipoly.hpp"
#include "torus/parser.hpp"
#include "torus/vector_field.hpp"

namespace testing_support {

using namespace torus;

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline long rand_nonzero(Rng& rng, long lo, long hi) {
  long v = 0;
  while (v == 0) v = rand_int(rng, lo, hi);
  return v;
}

inline Rational rand_rational(Rng& rng, long range = 5, long max_den = 4) {
  Rational r(rand_int(rng, -range, range), rand_int(rng, 1, max_den));
  r.canonicalize();
  return r;
}

/// Mostly rational scalars with an occasional sqrt(m) part.
inline Scalar rand_scalar(Rng& rng, bool with_root = true) {
  if (with_root && rand_int(rng, 0, 3) == 0) return Scalar(rand_rational(rng), rand_rational(rng));
  return Scalar(rand_rational(rng));
}

inline MultiPoly rand_poly(const FieldPtr& field, Rng& rng, int max_deg, int terms, bool with_root = true) {
  MultiPoly p(field);
  for (int t = 0; t < terms; ++t) {
    const int d = static_cast<int>(rand_int(rng, 0, max_deg));
    const int i = static_cast<int>(rand_int(rng, 0, d));
    const int j = static_cast<int>(rand_int(rng, 0, d - i));
    p += MultiPoly::monomial(field, rand_scalar(rng, with_root), Monomial(i, j, d - i - j));
  }
  return p;
}

/// Homogeneous polynomial of degree d with integer coefficients in [-3, 3].
inline MultiPoly rand_homogeneous(const FieldPtr& field, Rng& rng, int d, bool with_z = true) {
  MultiPoly p(field);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      const int k = d - i - j;
      if (!with_z && k > 0) continue;
      p += MultiPoly::monomial(field, Scalar(rand_int(rng, -3, 3)), Monomial(i, j, k));
    }
  return p;
}

inline MultiPoly var(const FieldPtr& f, Var v) { return MultiPoly::variable(f, v); }
inline MultiPoly cst(const FieldPtr& f, const Scalar& c) { return MultiPoly::constant(f, c); }

/// Linear polynomial c0 + c1 x + c2 y + c3 z with coefficients in [lo, hi].
inline MultiPoly rand_linear(const FieldPtr& field, Rng& rng, long lo = -3, long hi = 3) {
  return cst(field, Scalar(rand_int(rng, lo, hi))) + Scalar(rand_int(rng, lo, hi)) * var(field, Var::X) +
         Scalar(rand_int(rng, lo, hi)) * var(field, Var::Y) + Scalar(rand_int(rng, lo, hi)) * var(field, Var::Z);
}

/// Quadratic on-torus field with integer data in [-3, 3].
inline VectorField rand_quadratic(const FieldPtr& field, Rng& rng, bool alpha_nonzero = false) {
  const Scalar alpha = alpha_nonzero ? Scalar(rand_nonzero(rng, -3, 3)) : Scalar(rand_int(rng, -3, 3));
  return build_quadratic({alpha, rand_linear(field, rng)}, field);
}

inline KolmogorovParams rand_kolmogorov_params(Rng& rng) {
  return {Scalar(rand_nonzero(rng, -3, 3)), Scalar(rand_nonzero(rng, -3, 3))};
}

inline VectorField rand_cubic(const FieldPtr& field, Rng& rng) {
  MultiPoly f = rand_homogeneous(field, rng, 2) + rand_linear(field, rng);
  return build_cubic({rand_linear(field, rng), f, Scalar(rand_int(rng, -3, 3)), Scalar(rand_int(rng, -3, 3))}, field);
}

inline VectorField rand_pseudo_type(const FieldPtr& field, Rng& rng, int n) {
  MultiPoly A(field);
  while (A.is_zero()) A = rand_homogeneous(field, rng, n - 1);
  return build_pseudo_type({n, A}, field);
}

/// u x grad F is tangent to every level set of F, so it is on the torus
/// with cofactor 0; degree deg(u) + 3.
inline VectorField cross_with_gradient(const VectorField& u) {
  const TorusSurface torus(u.field());
  const MultiPoly Fx = differentiate(torus.F(), Var::X);
  const MultiPoly Fy = differentiate(torus.F(), Var::Y);
  const MultiPoly Fz = differentiate(torus.F(), Var::Z);
  return {u.Q * Fz - u.R * Fy, u.R * Fx - u.P * Fz, u.P * Fy - u.Q * Fx};
}

/// A random on-torus field of exact degree n (2 <= n <= 6) drawn from
/// several constructions and their sums.
inline VectorField rand_on_torus(const FieldPtr& field, Rng& rng, int n) {
  for (;;) {
    VectorField chi = rand_pseudo_type(field, rng, n);
    switch (rand_int(rng, 0, 3)) {
      case 0:
        break;
      case 1:
        if (n == 2) chi = chi + rand_quadratic(field, rng);
        if (n == 3) chi = chi + rand_cubic(field, rng);
        break;
      case 2:
        if (n >= 3) {
          const int d = n - 3;
          VectorField u{rand_homogeneous(field, rng, d), rand_homogeneous(field, rng, d),
                        rand_homogeneous(field, rng, d)};
          chi = chi + cross_with_gradient(u);
        }
        break;
      default:
        if (n == 3) chi = chi + build_kolmogorov(rand_kolmogorov_params(rng), field);
        if (n == 3) chi = chi + build_two_parallel({Scalar(rand_int(rng, -3, 3)), Scalar(rand_nonzero(rng, -3, 3)),
                                                   rand_homogeneous(field, rng, 2, false)},
                                                  field);
        break;
    }
    if (chi.degree() == n) return chi;
  }
}

inline VectorField field_of(const FieldPtr& f, const char* P, const char* Q, const char* R) {
  return {parse(P, f), parse(Q, f), parse(R, f)};
}

inline const char* kExampleP = "(1/4)*x*z + x*y^2";
inline const char* kExampleQ = "(1/4)*y*z - x^2*y";
inline const char* kExampleR = "(1/2)*(-a^2*(x^2+y^2) + z^2 + a^4 - 1)";

}  // namespace testing_support
