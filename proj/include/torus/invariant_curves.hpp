#pragma once

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

#include "torus/families.hpp"
#include "torus/vector_field.hpp"

namespace torus {

/// Plane a x + b y = 0 through the z-axis.
///
/// `unit` is normalised to a^2 + b^2 = 1 with the first nonzero entry
/// positive. For rational (or rational * sqrt m) slopes the plane is also
/// kept exactly, scaled so that the first nonzero entry is 1.
struct MeridianPlane {
  Eigen::Vector2d unit{1.0, 0.0};
  bool exact = false;
  std::optional<std::pair<Scalar, Scalar>> exact_coeffs;

  /// Polar angle in [0, pi) of the half-plane direction (-b, a).
  double angle() const;
};

/// Plane z = k.
struct ParallelPlane {
  double k = 0.0;
  bool exact = false;
  std::optional<Scalar> exact_k;

  /// Number of torus circles cut by the plane: 1 for k = +-1, else 2.
  int circle_count() const;
};

struct MeridianEntry {
  MeridianPlane plane;
  int multiplicity = 1;
  /// Largest residual of chi(l) restricted to {l = 0}; 0 for exact planes.
  double residual = 0.0;
};

struct ParallelEntry {
  ParallelPlane plane;
  int multiplicity = 1;
};

struct MeridianSet {
  bool infinite = false;
  std::vector<MeridianEntry> planes;

  /// Two meridians per plane.
  int count() const { return 2 * static_cast<int>(planes.size()); }
  /// Two meridians per plane, weighted by multiplicity.
  int count_with_multiplicity() const;
};

struct ParallelSet {
  bool infinite = false;
  std::vector<ParallelEntry> planes;

  int plane_count() const { return static_cast<int>(planes.size()); }
  int count() const;
  int count_with_multiplicity() const;
};

struct InvariantCurveSet {
  MeridianSet meridians;
  ParallelSet parallels;
};

/// Extactic polynomial of <x, y>: Q x - P y.
MultiPoly extactic_xy(const VectorField& chi);

/// Invariant meridian planes with multiplicities in the extactic polynomial.
/// Every plane is verified invariant before it is returned.
MeridianSet invariant_meridians(const VectorField& chi);

/// Invariant parallel planes z = k with -1 <= k <= 1; multiplicity is the
/// power of (z - k) dividing R.
ParallelSet invariant_parallels(const VectorField& chi);

InvariantCurveSet invariant_curves(const VectorField& chi);

/// The four-meridian criterion for the cubic family: beta = gamma = 0 and
/// f = c (a1 x + b1 y)(a2 x + b2 y) with real factors and c != 0.
/// Cross-checked against the multiplicity-weighted meridian count of the
/// built field; an inconsistency throws std::logic_error.
bool check_four_meridian_criterion(const CubicParams& params, const FieldPtr& field);

}  // namespace torus
