#pragma once

#include <string>
#include <variant>
#include <vector>

#include "torus/vector_field.hpp"

namespace torus {

/// P = K x/4 + f y + beta z, Q = K y/4 - f x + gamma z,
/// R = K'/2 (-m(x^2+y^2) + z^2 + m^2 - 1) - 2(beta x + gamma y)(x^2 + y^2 - m), K = K' z.
struct CubicParams {
  MultiPoly k_prime;  // deg <= 1
  MultiPoly f;        // deg <= 2
  Scalar beta;
  Scalar gamma;
};

/// P = K x/4 + c1 x y^2, Q = K y/4 - c1 x^2 y, R = c2 z/2 (...), K = c2 z^2.
struct KolmogorovParams {
  Scalar c1;
  Scalar c2;
};

/// P = alpha x z/4 + f y, Q = alpha y z/4 - f x, R = alpha/2 (...), f linear.
struct QuadraticParams {
  Scalar alpha;
  MultiPoly f;
};

/// (A y, -A x, 0) with A homogeneous of degree n - 1.
struct PseudoTypeParams {
  int n = 1;
  MultiPoly A;
};

/// P = x z (p x + q y)/2 + f y - m p z/2, Q = y z (p x + q y)/2 - f x - m q z/2,
/// R = (p x + q y)(z^2 - 1).
struct TwoParallelParams {
  Scalar p;
  Scalar q;
  MultiPoly f;  // deg <= 2
};

/// (c y, -c x, 0).
struct DegreeOneParams {
  Scalar c;
};

enum class Family { DegreeOne, Quadratic, Kolmogorov, TwoParallel, PseudoType, Cubic, OnTorusUnclassified, NotOnTorus };

std::string to_string(Family f);

struct FamilyTag {
  Family family = Family::NotOnTorus;
  std::variant<std::monostate, DegreeOneParams, QuadraticParams, KolmogorovParams, TwoParallelParams,
               PseudoTypeParams, CubicParams>
      params;
};

/// Throws DegreeViolation when deg K' > 1 or deg f > 2.
VectorField build_cubic(const CubicParams& params, const FieldPtr& field);
VectorField build_kolmogorov(const KolmogorovParams& params, const FieldPtr& field);
/// Throws DegreeViolation when deg f > 1.
VectorField build_quadratic(const QuadraticParams& params, const FieldPtr& field);
/// Throws DegreeViolation unless A is homogeneous of degree n - 1.
VectorField build_pseudo_type(const PseudoTypeParams& params, const FieldPtr& field);
/// Throws DegreeViolation when deg f > 2.
VectorField build_two_parallel(const TwoParallelParams& params, const FieldPtr& field);
VectorField build_degree_one(const DegreeOneParams& params, const FieldPtr& field);

/// -m(x^2 + y^2) + z^2 + m^2 - 1, the common factor of the R components.
MultiPoly torus_companion(const FieldPtr& field);

/// Every family the field belongs to, most specific first
/// (DegreeOne, Quadratic, Kolmogorov, TwoParallel, PseudoType, Cubic).
/// Empty for NotOnTorus; {OnTorusUnclassified} when on the torus but in no family.
std::vector<FamilyTag> recognize_all(const VectorField& chi);

/// Most specific family with recovered parameters.
FamilyTag recognize(const VectorField& chi);

/// H = F/(x^2+y^2)^2 for Kolmogorov and quadratic fields; x^2 + y^2 and z for
/// pseudo-type and degree-one fields. Throws NoKnownIntegral otherwise.
std::vector<RationalFn> canonical_first_integrals(const FamilyTag& tag, const FieldPtr& field);

/// A such that chi = (A y, -A x, 0), when chi has that shape.
std::optional<MultiPoly> rotation_factor(const VectorField& chi);

}  // namespace torus
