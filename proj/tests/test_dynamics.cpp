#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "torus/dynamics.hpp"
#include "torus/errors.hpp"
#include "torus/integrator.hpp"

using namespace torus;
using namespace testing_support;

namespace {

using Kind = PeriodicityVerdict::Kind;

Eigen::Vector3d random_torus_point(double m, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  return torus_point(m, u(rng), u(rng));
}

double wrap(double angle) { return std::remainder(angle, 2 * M_PI); }

/// Tangential component Q x - P y of chi along the circle z = k, r^2 = m + side sqrt(1 - k^2),
/// straight from the Cartesian field.
struct ParallelTangent {
  FloatPoly P, Q;
  double r, k;
  ParallelTangent(const VectorField& chi, double k_, int side)
      : P(chi.P), Q(chi.Q), r(std::sqrt(chi.field()->m_double() + side * std::sqrt(1 - k_ * k_))), k(k_) {}
  double operator()(double theta) const {
    const double x = r * std::cos(theta), y = r * std::sin(theta);
    return Q(x, y, k) * x - P(x, y, k) * y;
  }
};

/// Chart B(x, y) = A(x, y, z(x, y)) on the half torus with sign(z) = zsign.
double chart_B(const FloatPoly& A, double m, double zsign, double x, double y) {
  const double w = x * x + y * y - m;
  return A(x, y, zsign * std::sqrt(std::max(0.0, 1 - w * w)));
}

/// Finite-difference Jacobian of (B y, -B x).
Eigen::Matrix2d fd_jacobian(const FloatPoly& A, double m, const Eigen::Vector3d& q, double h) {
  const double zs = q.z() > 0 ? 1.0 : -1.0;
  auto field = [&](double x, double y) {
    const double B = chart_B(A, m, zs, x, y);
    return Eigen::Vector2d(B * y, -B * x);
  };
  Eigen::Matrix2d J;
  J.col(0) = (field(q.x() + h, q.y()) - field(q.x() - h, q.y())) / (2 * h);
  J.col(1) = (field(q.x(), q.y() + h) - field(q.x(), q.y() - h)) / (2 * h);
  return J;
}

}  // namespace

TEST_CASE("torus angles invert the parametrization") {
  Rng rng(1);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 1000; ++i) {
    const double th = u(rng), ph = u(rng);
    const Eigen::Vector3d p = torus_point(2.5, th, ph);
    const double w = p.x() * p.x() + p.y() * p.y() - 2.5;
    CHECK(std::abs(w * w + p.z() * p.z() - 1) < 1e-12);
    const Eigen::Vector2d ang = torus_angles(2.5, p);
    CHECK(std::abs(wrap(ang[0] - th)) < 1e-12);
    CHECK(std::abs(wrap(ang[1] - ph)) < 1e-12);
  }
}

TEST_CASE("cylindrical form of the example field") {
  const auto F = Field::make(4);
  const CylindricalField cyl = cylindrical_form(field_of(F, kExampleP, kExampleQ, kExampleR));
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d p = random_torus_point(4.0, rng);
    const double r2 = p.x() * p.x() + p.y() * p.y();
    const double th = std::atan2(p.y(), p.x());
    CHECK(cyl.theta_dot(p) == doctest::Approx(-(r2 / 2) * std::sin(2 * th)).epsilon(1e-12).scale(1));
  }
  CHECK(cyl.angular_numerator() == parse("-x^3*y - x*y^3", F));
}

TEST_CASE("theta_dot matches the Cartesian field at random torus points") {
  Rng rng(3);
  const auto F = Field::make(3);
  for (int batch = 0; batch < 10; ++batch) {
    const VectorField chi = rand_on_torus(F, rng, static_cast<int>(rand_int(rng, 2, 5)));
    const CylindricalField cyl(chi);
    const FloatPoly P(chi.P), Q(chi.Q), R(chi.R);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::Vector3d p = random_torus_point(3.0, rng);
      const double x = p.x(), y = p.y(), z = p.z();
      const double r2 = x * x + y * y;
      const double td = (Q(x, y, z) * x - P(x, y, z) * y) / r2;
      const double rd = (P(x, y, z) * x + Q(x, y, z) * y) / std::sqrt(r2);
      CHECK(std::abs(cyl.theta_dot(p) - td) <= 1e-9 * (1 + std::abs(td)));
      CHECK(std::abs(cyl.r_dot(p) - rd) <= 1e-9 * (1 + std::abs(rd)));
      CHECK(cyl.z_dot(p) == doctest::Approx(R(x, y, z)));
    }
  }
}

TEST_CASE("cylindrical form of the rotation and of the two-parallel family") {
  const auto F = Field::make(4);
  const CylindricalField rot(field_of(F, "y", "-x", "0"));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d p = random_torus_point(4.0, rng);
    CHECK(std::abs(rot.r_dot(p)) < 1e-14);
    CHECK(rot.theta_dot(p) == doctest::Approx(-1.0));
    CHECK(rot.z_dot(p) == 0.0);
  }
  const TwoParallelParams tp{Scalar(2), Scalar(-1), parse("x*y + z", F)};
  const CylindricalField cyl(build_two_parallel(tp, F));
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d p = random_torus_point(4.0, rng);
    const double r = std::hypot(p.x(), p.y()), th = std::atan2(p.y(), p.x());
    const double expected = r * (2 * std::cos(th) - std::sin(th)) * (p.z() * p.z() - 1);
    CHECK(cyl.z_dot(p) == doctest::Approx(expected).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("meridians of the example field are alternating limit cycles") {
  const auto F = Field::make(4);
  const auto verdicts = meridian_periodicity({cst(F, Scalar(1)), parse("x*y", F), Scalar(0), Scalar(0)}, F);
  REQUIRE(verdicts.size() == 4);
  const double expected_theta[] = {0.0, M_PI / 2, M_PI, 3 * M_PI / 2};
  for (int i = 0; i < 4; ++i) {
    CHECK(verdicts[i].theta == doctest::Approx(expected_theta[i]));
    REQUIRE(verdicts[i].verdict.kind == Kind::LimitCycle);
    CHECK(*verdicts[i].verdict.stability == (i % 2 == 0 ? Stability::Stable : Stability::Unstable));
  }
  CHECK(to_string(verdicts[0].verdict) == "LimitCycle(Stable)");
}

TEST_CASE("stable meridians attract nearby orbits") {
  const auto F = Field::make(4);
  const VectorField chi = field_of(F, kExampleP, kExampleQ, kExampleR);
  const VectorField reversed = Scalar(-1) * chi;
  // theta = 0 is stable: the theta-distance shrinks monotonically forward in time.
  // theta = pi/2 is unstable: it shrinks monotonically backward in time.
  auto check_contraction = [&](const VectorField& field, double theta0) {
    const Trajectory tr = integrate(field, torus_point(4.0, theta0 + 1e-3, 0.3), {30.0, 1e-2, true, 10});
    double prev = std::abs(wrap(tr.samples.front().theta - theta0));
    for (const auto& s : tr.samples) {
      const double d = std::abs(wrap(s.theta - theta0));
      CHECK(d <= prev + 1e-15);
      prev = d;
    }
    CHECK(prev < 1e-6);
  };
  check_contraction(chi, 0.0);
  check_contraction(reversed, M_PI / 2);
}

TEST_CASE("meridians through zeros of K' are not periodic") {
  const auto F = Field::make(4);
  const auto verdicts = meridian_periodicity({parse("z", F), parse("x*y", F), Scalar(0), Scalar(0)}, F);
  REQUIRE(verdicts.size() == 4);
  for (const auto& v : verdicts) {
    REQUIRE(v.verdict.kind == Kind::NotPeriodic);
    CHECK(std::abs(v.verdict.witness->z()) < 1e-10);
    const double phi = v.verdict.witness_param;
    CHECK(std::min(std::abs(wrap(phi)), std::abs(wrap(phi - M_PI))) < 1e-8);
  }
}

TEST_CASE("K' bounded away from zero gives four limit cycles") {
  const auto F = Field::make(4);
  const MultiPoly kp = parse("x + y + 3*a", F);
  // Oracle: K' > 0 on a dense grid of the torus, with margin.
  const FloatPoly k(kp);
  double lo = 1e300;
  for (int i = 0; i < 512; ++i)
    for (int j = 0; j < 512; ++j) lo = std::min(lo, k(torus_point(4.0, 2 * M_PI * i / 512, 2 * M_PI * j / 512)));
  REQUIRE(lo > 1.0);
  const auto verdicts = meridian_periodicity({kp, parse("x*y", F), Scalar(0), Scalar(0)}, F);
  REQUIRE(verdicts.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(verdicts[i].verdict.kind == Kind::LimitCycle);
    CHECK(*verdicts[i].verdict.stability != *verdicts[(i + 1) % 4].verdict.stability);
  }
}

TEST_CASE("meridian periodicity needs the four-meridian criterion") {
  const auto F = Field::make(4);
  CHECK_THROWS_AS(meridian_periodicity({cst(F, Scalar(1)), parse("x^2 + y^2", F), Scalar(0), Scalar(0)}, F),
                  PreconditionError);
  CHECK_THROWS_AS(meridian_periodicity({cst(F, Scalar(1)), parse("x*y", F), Scalar(1), Scalar(0)}, F),
                  PreconditionError);
}

TEST_CASE("parallel periodicity of named two-parallel fields") {
  const auto F = Field::make(4);
  const auto v0 = parallel_periodicity({Scalar(1), Scalar(0), MultiPoly(F)}, F, 1);
  REQUIRE(v0.kind == Kind::NotPeriodic);
  CHECK(std::abs(std::sin(v0.witness_param)) < 1e-12);

  // g = a^2 sin^2 + m + 1 - (a/2) sin has negative discriminant in sin.
  const TwoParallelParams pos{Scalar(1), Scalar(0), parse("y^2 + a^2 + 1", F)};
  const ParallelTangent pos_tangent(build_two_parallel(pos, F), 1.0, 1);
  double lo = 1e300;
  for (int i = 0; i < 20000; ++i) lo = std::min(lo, pos_tangent(2 * M_PI * i / 20000) / -4.0);
  REQUIRE(lo > 1.0);
  CHECK(parallel_periodicity(pos, F, 1).kind == Kind::PeriodicOrbit);
  CHECK(parallel_periodicity(pos, F, -1).kind == Kind::PeriodicOrbit);

  // g = a (1 + cos theta) vanishes only at theta = pi, where t = tan(theta/2) is infinite.
  const TwoParallelParams at_pi{Scalar(0), Scalar(2), parse("a", F)};
  const auto vp = parallel_periodicity(at_pi, F, 1);
  REQUIRE(vp.kind == Kind::NotPeriodic);
  CHECK(vp.witness_param == doctest::Approx(M_PI));
  CHECK_THROWS_AS(parallel_periodicity({Scalar(0), Scalar(0), parse("x", F)}, F, 1), PreconditionError);
}

TEST_CASE("parallel periodicity agrees with a scan of the Cartesian field") {
  const auto F = Field::make(4);
  Rng rng(5);
  int decided = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const TwoParallelParams p{Scalar(rand_int(rng, -2, 2)), Scalar(rand_nonzero(rng, -2, 2)),
                              rand_homogeneous(F, rng, 2, rand_int(rng, 0, 1) == 0) + rand_linear(F, rng, -4, 4)};
    const VectorField chi = build_two_parallel(p, F);
    for (int which : {1, -1}) {
      const int N = 20000;
      double lo = 1e300;
      bool sign_change = false;
      const ParallelTangent tangent(chi, which, 1);
      double prev = tangent(0.0);
      for (int i = 0; i <= N; ++i) {
        const double th = 2 * M_PI * i / N;
        const double g = tangent(th);
        if (i % 500 == 0)
          CHECK(std::abs(parallel_restriction(p, F, which, th) * -4.0 - g) < 1e-9 * (1 + std::abs(g)));
        sign_change = sign_change || (g > 0) != (prev > 0);
        lo = std::min(lo, std::abs(g));
        prev = g;
      }
      const PeriodicityVerdict v = parallel_periodicity(p, F, which);
      if (sign_change) {
        CHECK(v.kind == Kind::NotPeriodic);
        ++decided;
      } else if (lo > 1e-3) {
        CHECK(v.kind == Kind::PeriodicOrbit);
        ++decided;
      }
      if (v.kind == Kind::NotPeriodic)
        CHECK(std::abs(parallel_restriction(p, F, which, v.witness_param)) < 1e-8);
    }
  }
  CHECK(decided > 250);
}

TEST_CASE("the z = 0 parallel of a kolmogorov field carries singular points") {
  const auto F = Field::make(4);
  const VectorField chi = build_kolmogorov({Scalar(1), Scalar(1)}, F);
  for (int side : {1, -1}) {
    const PeriodicityVerdict v = parallel_orbit_verdict(chi, 0.0, side);
    REQUIRE(v.kind == Kind::NotPeriodic);
    const Eigen::Vector3d w = *v.witness;
    CHECK(std::abs(w.z()) < 1e-14);
    const Eigen::Vector3d val(FloatPoly(chi.P)(w), FloatPoly(chi.Q)(w), FloatPoly(chi.R)(w));
    CHECK(val.norm() < 1e-8);
  }
}

TEST_CASE("rotation meridians and parallels are periodic") {
  const auto F = Field::make(4);
  const VectorField rot = field_of(F, "y", "-x", "0");
  CHECK(parallel_orbit_verdict(rot, 0.5, 1).kind == Kind::PeriodicOrbit);
  CHECK(parallel_orbit_verdict(rot, -1.0, 1).kind == Kind::PeriodicOrbit);
}

TEST_CASE("quadratic fields with alpha != 0 have no singular points") {
  const auto F = Field::make(4);
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorField chi = rand_quadratic(F, rng, true);
    const SingularSet s = singular_points(chi, recognize(chi));
    CHECK(s.kind == SingularSet::Kind::Empty);
    CHECK_FALSE(s.numerical_only);
    const FloatPoly P(chi.P), Q(chi.Q), R(chi.R);
    double norm = 0.0;
    for (const auto* poly : {&chi.P, &chi.Q, &chi.R})
      for (const auto& t : poly->terms()) norm += std::abs(F->to_double(t.coeff));
    double lo = 1e300;
    for (int i = 0; i < 512; ++i)
      for (int j = 0; j < 512; ++j) {
        const Eigen::Vector3d p = torus_point(4.0, 2 * M_PI * i / 512, 2 * M_PI * j / 512);
        lo = std::min(lo, Eigen::Vector3d(P(p), Q(p), R(p)).norm() / norm);
      }
    CHECK(lo > 1e-3);
  }
}

TEST_CASE("singular sets with closed forms") {
  const auto F = Field::make(4);
  const VectorField rot = field_of(F, "2*y", "-2*x", "0");
  CHECK(singular_points(rot, recognize(rot)).kind == SingularSet::Kind::Empty);
  const VectorField zero = field_of(F, "0", "0", "0");
  CHECK(singular_points(zero, recognize(zero)).kind == SingularSet::Kind::Curves);

  const VectorField az = build_pseudo_type({2, parse("z", F)}, F);
  const SingularSet s = singular_points(az, recognize(az));
  CHECK(s.kind == SingularSet::Kind::Curves);
  CHECK_FALSE(s.description.empty());
}

TEST_CASE("isolated zeros of A are located and linearly zero") {
  const auto F = Field::make(4);
  const double m = 4.0;
  const MultiPoly A = parse("y^2 + (z - 1/2)^2", F);
  // Not homogeneous, so built directly rather than through build_pseudo_type.
  const VectorField chi{A * var(F, Var::Y), -(A * var(F, Var::X)), MultiPoly(F)};
  const SingularSet s = singular_points(chi, recognize(chi));
  REQUIRE(s.kind == SingularSet::Kind::IsolatedPoints);
  REQUIRE(s.points.size() == 4);
  std::vector<Eigen::Vector3d> expected;
  for (double sx : {1.0, -1.0})
    for (double sr : {1.0, -1.0}) expected.emplace_back(sx * std::sqrt(m + sr * std::sqrt(3.0) / 2), 0.0, 0.5);
  const FloatPoly Af(A);
  for (const auto& e : expected) {
    const auto it = std::find_if(s.points.begin(), s.points.end(),
                                 [&](const SingularPoint& sp) { return (sp.point - e).norm() < 1e-8; });
    REQUIRE(it != s.points.end());
    REQUIRE(it->cls.has_value());
    CHECK(*it->cls == SingClass::LinearlyZero);

    const SingularityInfo info = classify_singularity(chi, e);
    CHECK(info.cls == SingClass::LinearlyZero);
    const Eigen::Matrix2d fd = fd_jacobian(Af, m, e, 1e-5);
    CHECK(fd.norm() < 1e-6);
    CHECK((fd - info.jacobian).norm() < 1e-5);
  }
}

TEST_CASE("chart trace matches the finite-difference divergence") {
  const auto F = Field::make(4);
  const double m = 4.0;
  const VectorField chi = build_pseudo_type({2, parse("x + z", F)}, F);
  const FloatPoly A(parse("x + z", F));
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.2, M_PI - 0.2);
  int semi = 0;
  for (int i = 0; i < 200; ++i) {
    // Points of {x = -z} on the torus, away from z = 0.
    const double phi = (i % 2 ? 1 : -1) * u(rng);
    const double rho = std::sqrt(m + std::cos(phi));
    const double theta = (i % 4 < 2 ? 1 : -1) * std::acos(-std::sin(phi) / rho);
    const Eigen::Vector3d q = torus_point(m, theta, phi);
    REQUIRE(std::abs(A(q)) < 1e-12);
    const SingularityInfo info = classify_singularity(chi, q);
    const Eigen::Matrix2d fd = fd_jacobian(A, m, q, 1e-6);
    CHECK(info.trace == doctest::Approx(fd.trace()).epsilon(1e-5).scale(1));
    CHECK((fd - info.jacobian).norm() < 1e-5);
    semi += info.cls == SingClass::SemiHyperbolic;
  }
  CHECK(semi > 100);
}

TEST_CASE("classification preconditions") {
  const auto F = Field::make(4);
  const VectorField az = build_pseudo_type({2, parse("z", F)}, F);
  CHECK_THROWS_AS(classify_singularity(az, Eigen::Vector3d(std::sqrt(5.0), 0, 0)), ChartError);
  const VectorField ax = build_pseudo_type({2, parse("x", F)}, F);
  CHECK_THROWS_AS(classify_singularity(ax, torus_point(4.0, 0.3, 0.4)), PreconditionError);
  CHECK_THROWS_AS(classify_singularity(ax, Eigen::Vector3d(0, 1, 0.5)), PreconditionError);
  const VectorField ex = field_of(F, kExampleP, kExampleQ, kExampleR);
  CHECK_THROWS_AS(classify_singularity(ex, torus_point(4.0, M_PI / 2, 0.4)), PreconditionError);
}

TEST_CASE("invariant meridians of pseudo-type fields are singular") {
  const auto F = Field::make(4);
  Rng rng(8);
  int with_planes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rand_int(rng, 2, 4));
    MultiPoly A(F);
    while (A.is_zero()) A = rand_homogeneous(F, rng, n - 1, false);
    const VectorField chi = build_pseudo_type({n, A}, F);
    const MeridianSet ms = invariant_meridians(chi);
    if (ms.infinite || ms.planes.empty()) continue;
    ++with_planes;
    const FloatPoly P(chi.P), Q(chi.Q);
    for (const auto& e : ms.planes)
      for (double th : {e.plane.angle(), e.plane.angle() + M_PI})
        for (int j = 0; j < 64; ++j) {
          const Eigen::Vector3d p = torus_point(4.0, th, 2 * M_PI * j / 64);
          CHECK(std::hypot(P(p), Q(p)) < 1e-9);
        }
    const SingularSet s = singular_points(chi, recognize(chi), {128});
    CHECK(s.kind == SingularSet::Kind::Curves);
  }
  CHECK(with_planes > 10);
}

TEST_CASE("generic search finds the kolmogorov equilibria") {
  const auto F = Field::make(4);
  const VectorField chi = build_kolmogorov({Scalar(1), Scalar(1)}, F);
  const SingularSet s = singular_points(chi, recognize(chi));
  CHECK(s.numerical_only);
  REQUIRE(s.kind == SingularSet::Kind::IsolatedPoints);
  // x = 0 or y = 0 with z = 0, hand-solved.
  std::vector<Eigen::Vector3d> expected;
  for (double r : {std::sqrt(5.0), std::sqrt(3.0)})
    for (double sg : {1.0, -1.0}) {
      expected.emplace_back(sg * r, 0, 0);
      expected.emplace_back(0, sg * r, 0);
    }
  CHECK(s.points.size() == expected.size());
  for (const auto& e : expected)
    CHECK(std::any_of(s.points.begin(), s.points.end(),
                      [&](const SingularPoint& sp) { return (sp.point - e).norm() < 1e-6; }));
}
