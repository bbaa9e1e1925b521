#include "torus/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "torus/errors.hpp"
#include "torus/parser.hpp"
#include "torus/unipoly.hpp"

namespace torus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCurveSamples = 8192;
constexpr double kInconclusiveBand = 1e-7;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

struct FloatField {
  FloatPoly P, Q, R;
  explicit FloatField(const VectorField& chi) : P(chi.P), Q(chi.Q), R(chi.R) {}
  Eigen::Vector3d operator()(const Eigen::Vector3d& p) const { return {P(p), Q(p), R(p)}; }
};

Eigen::Vector3d meridian_tangent(double m, double theta, double phi) {
  const double rho = std::sqrt(m + std::cos(phi));
  const double s = -std::sin(phi) / (2.0 * rho);
  return {s * std::cos(theta), s * std::sin(theta), std::cos(phi)};
}

Eigen::Vector3d theta_tangent(double theta) { return {-std::sin(theta), std::cos(theta), 0.0}; }

struct ScanResult {
  bool found = false;
  double param = 0.0;
  double residual = 0.0;
  double min_abs = 0.0;
  double scale = 0.0;
};

double bisect(const std::function<double(double)>& g, double a, double b) {
  double fa = g(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = g(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& h, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = h(c), fd = h(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(d);
    }
  }
  return 0.5 * (a + b);
}

// Looks for a zero of the 2 pi-periodic function g by sign changes on n
// samples; near-zero local minima of |g| are refined as touching zeros.
ScanResult scan_periodic(const std::function<double(double)>& g, int n) {
  std::vector<double> v(n);
  ScanResult out;
  out.min_abs = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    v[j] = g(kTwoPi * j / n);
    out.scale = std::max(out.scale, std::abs(v[j]));
    out.min_abs = std::min(out.min_abs, std::abs(v[j]));
  }
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double a = h * j;
    const double va = v[j], vb = v[(j + 1) % n];
    if (va == 0.0) {
      out.found = true;
      out.param = a;
      out.residual = 0.0;
      return out;
    }
    if ((va > 0) != (vb > 0) && vb != 0.0) {
      out.found = true;
      out.param = wrap_angle(bisect(g, a, a + h));
      out.residual = std::abs(g(out.param));
      return out;
    }
  }
  const double touch_tol = 1e-12 * std::max(1.0, out.scale);
  for (int j = 0; j < n; ++j) {
    const double prev = std::abs(v[(j + n - 1) % n]), cur = std::abs(v[j]), next = std::abs(v[(j + 1) % n]);
    if (cur > prev || cur > next || cur > 1e-3 * std::max(1.0, out.scale)) continue;
    const double t = golden_min([&](double s) { return std::abs(g(s)); }, h * (j - 1), h * (j + 1));
    const double r = std::abs(g(t));
    out.min_abs = std::min(out.min_abs, r);
    if (r <= touch_tol) {
      out.found = true;
      out.param = wrap_angle(t);
      out.residual = r;
      return out;
    }
  }
  return out;
}

PeriodicityVerdict verdict_from_scan(const ScanResult& s, const std::function<Eigen::Vector3d(double)>& point,
                                     double band) {
  if (s.found) return PeriodicityVerdict::not_periodic(point(s.param), s.param, s.residual);
  if (s.min_abs < band) {
    std::ostringstream why;
    why << "minimum " << s.min_abs << " below " << band << " without a sign change";
    return PeriodicityVerdict::inconclusive(why.str());
  }
  return PeriodicityVerdict::periodic();
}

}  // namespace

Eigen::Vector3d torus_point(double m, double theta, double phi) {
  const double rho = std::sqrt(m + std::cos(phi));
  return {rho * std::cos(theta), rho * std::sin(theta), std::sin(phi)};
}

Eigen::Vector2d torus_angles(double m, const Eigen::Vector3d& p) {
  return {std::atan2(p.y(), p.x()), std::atan2(p.z(), p.x() * p.x() + p.y() * p.y() - m)};
}

CylindricalField::CylindricalField(const VectorField& chi)
    : radial_(chi.P * MultiPoly::variable(chi.field(), Var::X) + chi.Q * MultiPoly::variable(chi.field(), Var::Y)),
      angular_(chi.Q * MultiPoly::variable(chi.field(), Var::X) - chi.P * MultiPoly::variable(chi.field(), Var::Y)),
      radial_f_(radial_),
      angular_f_(angular_),
      R_(chi.R) {}

double CylindricalField::r_dot(const Eigen::Vector3d& p) const {
  return radial_f_(p) / std::hypot(p.x(), p.y());
}

double CylindricalField::theta_dot(const Eigen::Vector3d& p) const {
  return angular_f_(p) / (p.x() * p.x() + p.y() * p.y());
}

CylindricalField cylindrical_form(const VectorField& chi) { return CylindricalField(chi); }

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::SemiStable: return "SemiStable";
  }
  return "?";
}

std::string to_string(const PeriodicityVerdict& v) {
  switch (v.kind) {
    case PeriodicityVerdict::Kind::PeriodicOrbit: return "PeriodicOrbit";
    case PeriodicityVerdict::Kind::LimitCycle: return "LimitCycle(" + to_string(*v.stability) + ")";
    case PeriodicityVerdict::Kind::NotPeriodic: return "NotPeriodic";
    case PeriodicityVerdict::Kind::Inconclusive: return "Inconclusive(" + v.reason + ")";
  }
  return "?";
}

std::vector<MeridianVerdict> meridian_periodicity(const CubicParams& params, const FieldPtr& field) {
  if (!check_four_meridian_criterion(params, field))
    throw PreconditionError("meridian periodicity needs beta = gamma = 0 and f a product of two real linear forms");
  const VectorField chi = build_cubic(params, field);
  const MeridianSet meridians = invariant_meridians(chi);
  const double m = field->m_double();

  std::vector<MeridianVerdict> out;
  for (const auto& e : meridians.planes) {
    const double th = e.plane.angle();
    out.push_back({th, e.multiplicity, {}});
    out.push_back({th + std::numbers::pi, e.multiplicity, {}});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });

  const FloatPoly k_prime(params.k_prime);
  const CylindricalField cyl(chi);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double th = out[i].theta;
    auto point = [&](double phi) { return torus_point(m, th, phi); };
    const ScanResult s = scan_periodic([&](double phi) { return k_prime(point(phi)); }, kCurveSamples);
    PeriodicityVerdict v = verdict_from_scan(s, point, kInconclusiveBand);
    if (v.kind == PeriodicityVerdict::Kind::PeriodicOrbit) {
      // theta_dot keeps its sign between adjacent invariant meridians.
      const double prev = out[(i + n - 1) % n].theta - (i == 0 ? kTwoPi : 0.0);
      const double next = out[(i + 1) % n].theta + (i + 1 == n ? kTwoPi : 0.0);
      const double before = cyl.theta_dot(torus_point(m, 0.5 * (prev + th), 0.0));
      const double after = cyl.theta_dot(torus_point(m, 0.5 * (th + next), 0.0));
      Stability st = Stability::SemiStable;
      if (before > 0 && after < 0) st = Stability::Stable;
      if (before < 0 && after > 0) st = Stability::Unstable;
      v = PeriodicityVerdict::limit_cycle(st);
    }
    out[i].verdict = std::move(v);
  }
  return out;
}

namespace {

MultiPoly parallel_restriction_poly(const TwoParallelParams& params, const FieldPtr& field, int which) {
  const MultiPoly x = MultiPoly::variable(field, Var::X);
  const MultiPoly y = MultiPoly::variable(field, Var::Y);
  const MultiPoly fz = substitute(params.f, Var::Z, MultiPoly::constant(field, Scalar(which)));
  return fz - Scalar(Rational(which, 2)) * (params.p * y - params.q * x);
}

// a^k in Q(sqrt m).
Scalar root_power(const Field& field, int k) {
  Rational mk = 1;
  for (int i = 0; i < k / 2; ++i) mk *= field.m();
  return k % 2 == 0 ? Scalar(mk) : Scalar(Rational(0), mk);
}

// (1 + t^2)^d g(theta) with cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2).
UniPoly weierstrass(const MultiPoly& G) {
  const FieldPtr& field = G.field();
  const int d = G.degree();
  const UniPoly one_minus(field, {Scalar(1), Scalar(0), Scalar(-1)});
  const UniPoly two_t(field, {Scalar(0), Scalar(2)});
  const UniPoly one_plus(field, {Scalar(1), Scalar(0), Scalar(1)});
  auto upow = [&](const UniPoly& u, int k) {
    UniPoly r(field, {Scalar(1)});
    for (int i = 0; i < k; ++i) r = r * u;
    return r;
  };
  UniPoly out(field);
  for (const auto& t : G.terms()) {
    const int i = t.mono.e[0], j = t.mono.e[1];
    const Scalar c = field->mul(t.coeff, root_power(*field, i + j));
    out = out + UniPoly(field, {c}) * upow(one_minus, i) * upow(two_t, j) * upow(one_plus, d - i - j);
  }
  return out;
}

}  // namespace

double parallel_restriction(const TwoParallelParams& params, const FieldPtr& field, int which, double theta) {
  const FloatPoly G(parallel_restriction_poly(params, field, which));
  const double a = field->sqrt_m();
  return G(a * std::cos(theta), a * std::sin(theta), 0.0);
}

PeriodicityVerdict parallel_periodicity(const TwoParallelParams& params, const FieldPtr& field, int which) {
  if (params.p.is_zero() && params.q.is_zero()) throw PreconditionError("two-parallel family needs (p, q) != (0, 0)");
  if (which != 1 && which != -1) throw std::invalid_argument("parallel must be z = 1 or z = -1");
  const MultiPoly G = parallel_restriction_poly(params, field, which);
  const double a = field->sqrt_m();
  auto point = [&](double th) { return Eigen::Vector3d(a * std::cos(th), a * std::sin(th), which); };
  auto witness = [&](double th) {
    th = wrap_angle(th);
    return PeriodicityVerdict::not_periodic(point(th), th, std::abs(parallel_restriction(params, field, which, th)));
  };
  if (G.is_zero()) return witness(0.0);
  if (field->sign(eval_exact(G, {-Scalar::root(), Scalar(0), Scalar(0)})) == 0) return witness(std::numbers::pi);

  const UniPoly U = weierstrass(G);
  if (U.is_zero()) return witness(0.0);
  if (U.degree() < 1) return PeriodicityVerdict::periodic();
  try {
    const double bound = root_bound(U);
    const auto roots = real_roots(U, -bound, bound);
    if (!roots.empty()) return witness(2.0 * std::atan(roots.front().value));
  } catch (const IllConditioned& e) {
    return PeriodicityVerdict::inconclusive(e.what());
  }
  return PeriodicityVerdict::periodic();
}

PeriodicityVerdict meridian_orbit_verdict(const VectorField& chi, double theta) {
  const FloatField F(chi);
  const double m = chi.field()->m_double();
  auto point = [&](double phi) { return torus_point(m, theta, phi); };
  const ScanResult s =
      scan_periodic([&](double phi) { return F(point(phi)).dot(meridian_tangent(m, theta, phi)); }, kCurveSamples);
  return verdict_from_scan(s, point, kInconclusiveBand * std::max(1.0, s.scale));
}

PeriodicityVerdict parallel_orbit_verdict(const VectorField& chi, double k, int side) {
  const FloatField F(chi);
  const double m = chi.field()->m_double();
  const double rho = std::sqrt(m + side * std::sqrt(std::max(0.0, 1.0 - k * k)));
  auto point = [&](double th) { return Eigen::Vector3d(rho * std::cos(th), rho * std::sin(th), k); };
  const ScanResult s = scan_periodic([&](double th) { return F(point(th)).dot(theta_tangent(th)); }, kCurveSamples);
  return verdict_from_scan(s, point, kInconclusiveBand * std::max(1.0, s.scale));
}

std::string to_string(SingClass c) {
  switch (c) {
    case SingClass::SemiHyperbolic: return "SemiHyperbolic";
    case SingClass::NilpotentOrLinearlyZero: return "NilpotentOrLinearlyZero";
    case SingClass::LinearlyZero: return "LinearlyZero";
  }
  return "?";
}

std::string to_string(SingularSet::Kind k) {
  switch (k) {
    case SingularSet::Kind::Empty: return "Empty";
    case SingularSet::Kind::IsolatedPoints: return "IsolatedPoints";
    case SingularSet::Kind::Curves: return "Curves";
  }
  return "?";
}

namespace {

struct Grid {
  int n;
  std::vector<double> v;
  double& at(int i, int j) { return v[static_cast<std::size_t>(((i % n + n) % n) * n + (j % n + n) % n)]; }
  double at(int i, int j) const {
    return v[static_cast<std::size_t>(((i % n + n) % n) * n + (j % n + n) % n)];
  }
  double theta(int i) const { return kTwoPi * i / n; }
  double phi(int j) const { return kTwoPi * j / n; }
};

template <class F>
Grid sample_grid(double m, int n, F&& f) {
  Grid g{n, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = f(torus_point(m, g.theta(i), g.phi(j)));
  return g;
}

bool is_local_min(const Grid& g, int i, int j, const std::function<double(double)>& key) {
  const double c = key(g.at(i, j));
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      if ((di || dj) && key(g.at(i + di, j + dj)) < c) return false;
  return true;
}

// Connected components (8-neighbourhood, periodic) of marked grid nodes.
std::vector<std::vector<std::pair<int, int>>> components(const std::vector<char>& marked, int n) {
  std::vector<char> seen(marked.size(), 0);
  std::vector<std::vector<std::pair<int, int>>> out;
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(((i % n + n) % n) * n + (j % n + n) % n); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!marked[idx(i, j)] || seen[idx(i, j)]) continue;
      std::vector<std::pair<int, int>> comp, stack{{i, j}};
      seen[idx(i, j)] = 1;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        comp.emplace_back(a, b);
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            const int u = ((a + di) % n + n) % n, w = ((b + dj) % n + n) % n;
            if (marked[idx(u, w)] && !seen[idx(u, w)]) {
              seen[idx(u, w)] = 1;
              stack.emplace_back(u, w);
            }
          }
        }
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

struct ScalarOnTorus {
  double m;
  FloatPoly A, Ax, Ay, Az;
  ScalarOnTorus(double m_, const MultiPoly& a)
      : m(m_), A(a), Ax(differentiate(a, Var::X)), Ay(differentiate(a, Var::Y)), Az(differentiate(a, Var::Z)) {}

  double value(const Eigen::Vector2d& tp) const { return A(torus_point(m, tp[0], tp[1])); }

  Eigen::Vector2d gradient(const Eigen::Vector2d& tp) const {
    const double th = tp[0], ph = tp[1];
    const Eigen::Vector3d p = torus_point(m, th, ph);
    const Eigen::Vector3d g(Ax(p), Ay(p), Az(p));
    const double rho = std::sqrt(m + std::cos(ph));
    const Eigen::Vector3d d_theta(-rho * std::sin(th), rho * std::cos(th), 0.0);
    return {g.dot(d_theta), g.dot(meridian_tangent(m, th, ph))};
  }
};

// Newton iteration on the angular gradient of A; converges to critical points.
Eigen::Vector2d newton_critical(const ScalarOnTorus& A, Eigen::Vector2d tp) {
  constexpr double h = 1e-6;
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector2d g = A.gradient(tp);
    Eigen::Matrix2d H;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e[k] = h;
      H.col(k) = (A.gradient(tp + e) - A.gradient(tp - e)) / (2 * h);
    }
    Eigen::Vector2d step = H.fullPivLu().solve(-g);
    if (!step.allFinite()) break;
    if (step.norm() > 0.1) step *= 0.1 / step.norm();
    tp += step;
    if (step.norm() < 1e-15) break;
  }
  return tp;
}

void add_point(std::vector<SingularPoint>& pts, const Eigen::Vector3d& p, double residual) {
  for (const auto& q : pts)
    if ((q.point - p).norm() < 1e-6) return;
  pts.push_back({p, std::nullopt, residual});
}

void sort_points(std::vector<SingularPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const SingularPoint& a, const SingularPoint& b) {
    for (int k = 0; k < 3; ++k)
      if (std::abs(a.point[k] - b.point[k]) > 1e-9) return a.point[k] < b.point[k];
    return false;
  });
}

SingularSet pseudo_type_singular(const VectorField& chi, const MultiPoly& A, int n) {
  const double m = chi.field()->m_double();
  SingularSet out;
  if (A.is_constant()) {
    if (A.is_zero()) {
      out.kind = SingularSet::Kind::Curves;
      out.description = "the whole torus (zero field)";
    }
    return out;
  }
  const ScalarOnTorus fa(m, A);
  const Grid g = sample_grid(m, n, [&](const Eigen::Vector3d& p) { return fa.A(p); });
  double scale = 0.0;
  for (double v : g.v) scale = std::max(scale, std::abs(v));

  std::vector<char> marked(g.v.size(), 0);
  const double zero_tol = 1e-14 * std::max(1.0, scale);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c = g.at(i, j);
      const bool flip = (c > 0) != (g.at(i + 1, j) > 0) || (c > 0) != (g.at(i, j + 1) > 0);
      if (flip || std::abs(c) <= zero_tol) marked[static_cast<std::size_t>(i * n + j)] = 1;
    }
  }
  const auto comps = components(marked, n);
  int curves = 0;
  for (const auto& comp : comps) {
    if (comp.size() >= 4) {
      ++curves;
    } else {
      const auto [i, j] = comp.front();
      std::ostringstream w;
      w << "GridResolutionWarning: small zero component of A near theta=" << g.theta(i) << ", phi=" << g.phi(j);
      out.warnings.push_back(w.str());
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (marked[static_cast<std::size_t>(i * n + j)]) continue;
      if (std::abs(g.at(i, j)) > 1e-2 * std::max(1.0, scale)) continue;
      if (!is_local_min(g, i, j, [](double v) { return std::abs(v); })) continue;
      const Eigen::Vector2d tp = newton_critical(fa, {g.theta(i), g.phi(j)});
      const double r = std::abs(fa.value(tp));
      if (r < 1e-10) add_point(out.points, torus_point(m, tp[0], tp[1]), r);
    }
  }
  sort_points(out.points);
  for (auto& sp : out.points) {
    try {
      sp.cls = classify_singularity(chi, sp.point).cls;
    } catch (const ChartError&) {
      sp.cls.reset();
    }
  }

  if (curves > 0) {
    out.kind = SingularSet::Kind::Curves;
    std::ostringstream d;
    d << "zero set of A = " << serialize(A) << " on the torus: " << curves << " curve component"
      << (curves == 1 ? "" : "s");
    if (!out.points.empty()) d << " and " << out.points.size() << " isolated point(s)";
    out.description = d.str();
  } else if (!out.points.empty()) {
    out.kind = SingularSet::Kind::IsolatedPoints;
  }
  return out;
}

SingularSet generic_singular(const VectorField& chi, int n) {
  const double m = chi.field()->m_double();
  const FloatField F(chi);
  SingularSet out;
  out.numerical_only = true;
  const Grid g = sample_grid(m, n, [&](const Eigen::Vector3d& p) { return F(p).squaredNorm(); });
  double scale = 0.0;
  for (double v : g.v) scale = std::max(scale, v);

  auto residual = [&](const Eigen::Vector2d& tp) { return F(torus_point(m, tp[0], tp[1])); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.at(i, j) > 1e-2 * std::max(1.0, scale)) continue;
      if (!is_local_min(g, i, j, [](double v) { return v; })) continue;
      Eigen::Vector2d tp(g.theta(i), g.phi(j));
      double lambda = 1e-3;
      for (int it = 0; it < 100; ++it) {
        const Eigen::Vector3d r = residual(tp);
        Eigen::Matrix<double, 3, 2> J;
        for (int k = 0; k < 2; ++k) {
          Eigen::Vector2d e = Eigen::Vector2d::Zero();
          e[k] = 1e-7;
          J.col(k) = (residual(tp + e) - residual(tp - e)) / 2e-7;
        }
        const Eigen::Matrix2d N = J.transpose() * J + lambda * Eigen::Matrix2d::Identity();
        const Eigen::Vector2d step = N.ldlt().solve(-J.transpose() * r);
        if (!step.allFinite()) break;
        if (residual(tp + step).norm() < r.norm()) {
          tp += step;
          lambda = std::max(lambda * 0.1, 1e-15);
          if (step.norm() < 1e-15) break;
        } else {
          lambda *= 10;
          if (lambda > 1e10) break;
        }
      }
      const double r = residual(tp).norm();
      if (r < 1e-6) add_point(out.points, torus_point(m, tp[0], tp[1]), r);
    }
  }
  sort_points(out.points);
  if (out.points.size() > 16) {
    out.kind = SingularSet::Kind::Curves;
    out.description = "numerical search located " + std::to_string(out.points.size()) +
                      " zeros; the singular set appears to contain curves";
    out.warnings.push_back("GridResolutionWarning: many numerical zeros, treated as curves");
  } else if (!out.points.empty()) {
    out.kind = SingularSet::Kind::IsolatedPoints;
  }
  return out;
}

}  // namespace

SingularSet singular_points(const VectorField& chi, const FamilyTag& tag, const SingularOptions& opts) {
  if (chi.is_zero()) {
    SingularSet s;
    s.kind = SingularSet::Kind::Curves;
    s.description = "the whole torus (zero field)";
    return s;
  }
  if (tag.family == Family::Quadratic && !chi.R.is_zero()) return {};
  if (tag.family == Family::DegreeOne) return {};
  if (auto A = rotation_factor(chi)) return pseudo_type_singular(chi, *A, opts.grid);
  return generic_singular(chi, opts.grid);
}

SingularityInfo classify_singularity(const VectorField& chi, const Eigen::Vector3d& q) {
  const auto A = rotation_factor(chi);
  if (!A) throw PreconditionError("classify_singularity needs a field of the form (A y, -A x, 0)");
  const double m = chi.field()->m_double();
  const double x = q.x(), y = q.y(), z = q.z();
  const double radial = x * x + y * y - m;
  if (std::abs(radial * radial + z * z - 1.0) > 1e-8) throw PreconditionError("point is not on the torus");
  if (std::abs(z) < 1e-6) throw ChartError("chart over the upper or lower half needs z != 0");
  const ScalarOnTorus fa(m, *A);
  const double B = fa.A(q);
  if (std::abs(B) > 1e-8) throw PreconditionError("A does not vanish at the point");

  const double dzdx = -2.0 * x * radial / z;
  const double dzdy = -2.0 * y * radial / z;
  const double Bx = fa.Ax(q) + fa.Az(q) * dzdx;
  const double By = fa.Ay(q) + fa.Az(q) * dzdy;

  SingularityInfo info;
  info.jacobian << Bx * y, B + By * y, -B - Bx * x, -By * x;
  info.trace = Bx * y - By * x;
  if (std::abs(info.trace) > 1e-8)
    info.cls = SingClass::SemiHyperbolic;
  else if (info.jacobian.cwiseAbs().maxCoeff() < 1e-8)
    info.cls = SingClass::LinearlyZero;
  else
    info.cls = SingClass::NilpotentOrLinearlyZero;
  return info;
}

}  // namespace torus
