#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "torus/families.hpp"
#include "torus/invariant_curves.hpp"
#include "torus/vector_field.hpp"

namespace torus {

/// Point of the torus at angles (theta, phi):
/// (rho cos theta, rho sin theta, sin phi) with rho = sqrt(m + cos phi).
Eigen::Vector3d torus_point(double m, double theta, double phi);

/// (theta, phi) of a point, theta = atan2(y, x), phi = atan2(z, x^2 + y^2 - m).
Eigen::Vector2d torus_angles(double m, const Eigen::Vector3d& p);

/// The field in cylindrical coordinates (r, theta, z); valid for r > 0.
class CylindricalField {
 public:
  explicit CylindricalField(const VectorField& chi);

  double r_dot(const Eigen::Vector3d& p) const;
  double theta_dot(const Eigen::Vector3d& p) const;
  double z_dot(const Eigen::Vector3d& p) const { return R_(p); }

  /// P x + Q y, so that r_dot = radial_numerator / r.
  const MultiPoly& radial_numerator() const { return radial_; }
  /// Q x - P y, so that theta_dot = angular_numerator / r^2.
  const MultiPoly& angular_numerator() const { return angular_; }

 private:
  MultiPoly radial_, angular_;
  FloatPoly radial_f_, angular_f_, R_;
};

CylindricalField cylindrical_form(const VectorField& chi);

enum class Stability { Stable, Unstable, SemiStable };

std::string to_string(Stability s);

struct PeriodicityVerdict {
  enum class Kind { PeriodicOrbit, LimitCycle, NotPeriodic, Inconclusive };

  Kind kind = Kind::Inconclusive;
  std::optional<Stability> stability;  // LimitCycle only
  /// NotPeriodic only: a point of the curve where the field vanishes, the
  /// curve parameter there, and the residual of the restricted function.
  std::optional<Eigen::Vector3d> witness;
  double witness_param = 0.0;
  double witness_residual = 0.0;
  std::string reason;  // Inconclusive only

  static PeriodicityVerdict periodic() {
    PeriodicityVerdict v;
    v.kind = Kind::PeriodicOrbit;
    return v;
  }
  static PeriodicityVerdict limit_cycle(Stability s) {
    PeriodicityVerdict v;
    v.kind = Kind::LimitCycle;
    v.stability = s;
    return v;
  }
  static PeriodicityVerdict not_periodic(const Eigen::Vector3d& w, double param, double residual) {
    PeriodicityVerdict v;
    v.kind = Kind::NotPeriodic;
    v.witness = w;
    v.witness_param = param;
    v.witness_residual = residual;
    return v;
  }
  static PeriodicityVerdict inconclusive(std::string why) {
    PeriodicityVerdict v;
    v.reason = std::move(why);
    return v;
  }
};

/// "PeriodicOrbit", "LimitCycle(Stable)", "NotPeriodic", "Inconclusive(...)".
std::string to_string(const PeriodicityVerdict& v);

/// One half-plane of an invariant meridian plane.
struct MeridianVerdict {
  double theta = 0.0;  // in [0, 2 pi)
  int multiplicity = 1;
  PeriodicityVerdict verdict;
};

/// Periodicity of the invariant meridians of a cubic field satisfying the
/// four-meridian criterion (PreconditionError otherwise). K' is scanned along
/// each meridian; no zero gives a limit cycle whose stability is read from the
/// sign of theta_dot midway to the neighbouring meridians. Sorted by theta.
std::vector<MeridianVerdict> meridian_periodicity(const CubicParams& params, const FieldPtr& field);

/// Periodicity of the parallel z = which (+1 or -1) of a two-parallel field,
/// decided by the real roots of the Weierstrass-substituted restriction
/// g(theta) = f(a cos, a sin, which) - which/2 (p a sin - q a cos) plus a check at theta = pi.
PeriodicityVerdict parallel_periodicity(const TwoParallelParams& params, const FieldPtr& field, int which);

/// g(theta) above evaluated in floating point.
double parallel_restriction(const TwoParallelParams& params, const FieldPtr& field, int which, double theta);

/// Scan of the field along the meridian at half-plane angle theta, valid for
/// any field keeping that meridian invariant: a zero of the tangential
/// component gives NotPeriodic, otherwise PeriodicOrbit.
PeriodicityVerdict meridian_orbit_verdict(const VectorField& chi, double theta);

/// Same scan along the circle {z = k, x^2 + y^2 = m + side * sqrt(1 - k^2)}.
PeriodicityVerdict parallel_orbit_verdict(const VectorField& chi, double k, int side);

enum class SingClass { SemiHyperbolic, NilpotentOrLinearlyZero, LinearlyZero };

std::string to_string(SingClass c);

struct SingularPoint {
  Eigen::Vector3d point;
  std::optional<SingClass> cls;  // empty when the chart is not usable (z = 0)
  double residual = 0.0;
};

struct SingularSet {
  enum class Kind { Empty, IsolatedPoints, Curves };

  Kind kind = Kind::Empty;
  std::vector<SingularPoint> points;
  std::string description;  // Curves only
  bool numerical_only = false;
  std::vector<std::string> warnings;
};

std::string to_string(SingularSet::Kind k);

struct SingularOptions {
  int grid = 512;
};

/// Singular points of chi on the torus. Closed forms for the quadratic and
/// degree-one families, a grid scan of A for (A y, -A x, 0), and a numerical
/// search of |chi|^2 on a grid otherwise (flagged numerical_only).
SingularSet singular_points(const VectorField& chi, const FamilyTag& tag, const SingularOptions& opts = {});

struct SingularityInfo {
  SingClass cls = SingClass::LinearlyZero;
  double trace = 0.0;
  /// Jacobian of the chart pushforward (B y, -B x) at q.
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
};

/// Classifies a singular point q of a field (A y, -A x, 0) through the chart
/// B(x, y) = A(x, y, z(x, y)) over the half of the torus containing q.
/// Throws ChartError when |z| < 1e-6 and PreconditionError when q is not a
/// zero of A on the torus or chi has another shape.
SingularityInfo classify_singularity(const VectorField& chi, const Eigen::Vector3d& q);

}  // namespace torus
