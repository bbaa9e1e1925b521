#include "torus/invariant_curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "torus/errors.hpp"
#include "torus/unipoly.hpp"

namespace torus {

double MeridianPlane::angle() const {
  double th = std::atan2(unit[0], -unit[1]);
  if (th < 0) th += std::numbers::pi;
  if (th >= std::numbers::pi) th -= std::numbers::pi;
  return th;
}

int ParallelPlane::circle_count() const {
  if (exact_k) return (exact_k->is_rational() && abs(exact_k->p) == 1) ? 1 : 2;
  return std::abs(std::abs(k) - 1.0) < 1e-12 ? 1 : 2;
}

int MeridianSet::count_with_multiplicity() const {
  int total = 0;
  for (const auto& e : planes) total += 2 * e.multiplicity;
  return total;
}

int ParallelSet::count() const {
  int total = 0;
  for (const auto& e : planes) total += e.plane.circle_count();
  return total;
}

int ParallelSet::count_with_multiplicity() const {
  int total = 0;
  for (const auto& e : planes) total += e.plane.circle_count() * e.multiplicity;
  return total;
}

MultiPoly extactic_xy(const VectorField& chi) {
  const MultiPoly x = MultiPoly::variable(chi.field(), Var::X);
  const MultiPoly y = MultiPoly::variable(chi.field(), Var::Y);
  return chi.Q * x - chi.P * y;
}

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kSameRootTol = 1e-7;

UniPoly gcd_of(const std::vector<LineRestriction>& groups, const FieldPtr& field) {
  UniPoly g(field);
  for (const auto& grp : groups) {
    g = gcd(g, grp.coeff);
    if (g.degree() == 0) break;
  }
  return g;
}

MeridianPlane plane_from_slope(double t0, const std::optional<Scalar>& exact_t0, const Field& field) {
  // y - t0 x = 0  ->  (a, b) = (-t0, 1)
  MeridianPlane plane;
  Eigen::Vector2d ab(-t0, 1.0);
  ab.normalize();
  if (ab[0] < 0 || (ab[0] == 0 && ab[1] < 0)) ab = -ab;
  plane.unit = ab + Eigen::Vector2d::Zero();  // no negative zeros
  if (exact_t0) {
    plane.exact = true;
    if (exact_t0->is_zero())
      plane.exact_coeffs = std::make_pair(Scalar(0), Scalar(1));
    else
      plane.exact_coeffs = std::make_pair(Scalar(1), -field.inverse(*exact_t0));
  }
  return plane;
}

// Max over (x power, z power) groups of |Q_g(t0) - t0 P_g(t0)| and its scale.
std::pair<double, double> line_residual(const VectorField& chi, double t0) {
  std::map<std::pair<int, int>, std::pair<double, double>> acc;  // value, scale
  auto add = [&](const MultiPoly& comp, double factor) {
    for (const auto& grp : restrict_to_line(comp)) {
      const auto c = grp.coeff.to_double();
      double v = 0.0, s = 0.0, pw = 1.0;
      for (double ci : c) {
        v += ci * pw;
        s += std::abs(ci * pw);
        pw *= t0;
      }
      auto& slot = acc[{grp.x_power, grp.z_power}];
      slot.first += factor * v;
      slot.second += std::abs(factor) * s;
    }
  };
  add(chi.Q, 1.0);
  add(chi.P, -t0);
  double residual = 0.0, scale = 0.0;
  for (const auto& [key, vs] : acc) {
    residual = std::max(residual, std::abs(vs.first));
    scale = std::max(scale, vs.second);
  }
  return {residual, scale};
}

bool exact_line_invariant(const VectorField& chi, const Scalar& t0) {
  const MultiPoly image = chi.Q - t0 * chi.P;
  for (const auto& grp : restrict_to_line(image))
    if (!grp.coeff.eval(t0).is_zero()) return false;
  return true;
}

// Fallback for IllConditioned: scan the homogenised gcd over angles.
std::vector<RealRoot> scan_slopes(const UniPoly& g) {
  const auto c = g.to_double();
  const int d = g.degree();
  auto G = [&](double th) {
    double s = 0.0;
    for (int i = 0; i <= d; ++i) s += c[i] * std::pow(std::cos(th), d - i) * std::pow(std::sin(th), i);
    return s;
  };
  constexpr int kSamples = 8192;
  std::vector<RealRoot> roots;
  const double lo = -std::numbers::pi / 2 + 1e-9, hi = std::numbers::pi / 2 - 1e-9;
  double prev_th = lo, prev = G(lo);
  for (int i = 1; i <= kSamples; ++i) {
    const double th = lo + (hi - lo) * i / kSamples;
    const double cur = G(th);
    if ((prev > 0) != (cur > 0)) {
      double a = prev_th, b = th, fa = prev;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b), fm = G(mid);
        if ((fm > 0) == (fa > 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(RealRoot{std::tan(0.5 * (a + b)), 1});
    }
    prev_th = th;
    prev = cur;
  }
  return roots;
}

}  // namespace

MeridianSet invariant_meridians(const VectorField& chi) {
  MeridianSet out;
  const MultiPoly E = extactic_xy(chi);
  if (E.is_zero()) {
    out.infinite = true;
    return out;
  }
  const FieldPtr& field = chi.field();
  const auto groups = restrict_to_line(E);

  // The plane x = 0 is the slope at infinity.
  int mu_x = std::numeric_limits<int>::max();
  for (const auto& grp : groups) mu_x = std::min(mu_x, grp.x_power - grp.coeff.degree());
  if (mu_x >= 1 && divide_by_variable(chi.P, Var::X)) {
    MeridianPlane plane;
    plane.unit = {1.0, 0.0};
    plane.exact = true;
    plane.exact_coeffs = std::make_pair(Scalar(1), Scalar(0));
    out.planes.push_back(MeridianEntry{plane, mu_x, 0.0});
  }

  const UniPoly g = gcd_of(groups, field);
  if (g.degree() < 1) return out;
  const double bound = root_bound(g);

  std::vector<RealRoot> roots;
  std::vector<ExactRoot> exact;
  bool inexact_scan = false;
  try {
    roots = real_roots(g, -bound, bound);
    exact = exact_roots(g, -bound, bound);
  } catch (const IllConditioned&) {
    roots = scan_slopes(g);
    inexact_scan = true;
  }

  for (const auto& root : roots) {
    std::optional<Scalar> exact_t0;
    int multiplicity = root.multiplicity;
    for (const auto& e : exact) {
      if (std::abs(field->to_double(e.value) - root.value) < kSameRootTol) {
        exact_t0 = e.value;
        multiplicity = e.multiplicity;
        break;
      }
    }
    MeridianEntry entry{plane_from_slope(exact_t0 ? field->to_double(*exact_t0) : root.value, exact_t0, *field),
                        multiplicity, 0.0};
    if (exact_t0) {
      if (!exact_line_invariant(chi, *exact_t0)) continue;
    } else {
      auto [residual, scale] = line_residual(chi, root.value);
      if (residual > kResidualTol * std::max(1.0, scale)) continue;
      entry.residual = residual;
      if (inexact_scan) entry.multiplicity = 1;
    }
    out.planes.push_back(std::move(entry));
  }
  return out;
}

ParallelSet invariant_parallels(const VectorField& chi) {
  ParallelSet out;
  if (chi.R.is_zero()) {
    out.infinite = true;
    return out;
  }
  const FieldPtr& field = chi.field();
  // R in Q(sqrt m)[x, y][z]: one univariate polynomial in z per xy-monomial.
  std::map<std::pair<int, int>, std::vector<Scalar>> by_xy;
  for (const auto& t : chi.R.terms()) {
    auto& c = by_xy[{t.mono.e[0], t.mono.e[1]}];
    const auto k = static_cast<std::size_t>(t.mono.e[2]);
    if (c.size() <= k) c.resize(k + 1);
    c[k] += t.coeff;
  }
  UniPoly g(field);
  for (auto& [key, coeffs] : by_xy) {
    g = gcd(g, UniPoly(field, coeffs));
    if (g.degree() == 0) break;
  }
  if (g.degree() < 1) return out;

  const auto roots = real_roots(g, -1.0, 1.0);
  const auto exact = exact_roots(g, -1.0, 1.0);
  const MultiPoly z = MultiPoly::variable(field, Var::Z);
  for (const auto& root : roots) {
    ParallelEntry entry;
    entry.plane.k = root.value;
    entry.multiplicity = root.multiplicity;
    for (const auto& e : exact) {
      if (std::abs(field->to_double(e.value) - root.value) >= kSameRootTol) continue;
      entry.plane.exact = true;
      entry.plane.exact_k = e.value;
      entry.plane.k = field->to_double(e.value);
      const MultiPoly lin = z - MultiPoly::constant(field, e.value);
      int mult = 0;
      MultiPoly cur = chi.R;
      while (auto q = divide_exact_z(cur, lin)) {
        cur = std::move(*q);
        ++mult;
      }
      entry.multiplicity = mult;
      break;
    }
    out.planes.push_back(std::move(entry));
  }
  return out;
}

InvariantCurveSet invariant_curves(const VectorField& chi) {
  return InvariantCurveSet{invariant_meridians(chi), invariant_parallels(chi)};
}

bool check_four_meridian_criterion(const CubicParams& params, const FieldPtr& field) {
  bool criterion = false;
  const MultiPoly& f = params.f;
  if (params.beta.is_zero() && params.gamma.is_zero() && !f.is_zero() && f.is_homogeneous() && f.degree() == 2 &&
      f.degree_in(Var::Z) == 0) {
    const auto groups = restrict_to_line(f);
    const UniPoly& c = groups.front().coeff;  // A + B t + C t^2
    const Scalar A = c.coeff(0), B = c.coeff(1), C = c.coeff(2);
    if (C.is_zero()) {
      criterion = true;  // x divides f; the cofactor is linear over the reals
    } else {
      const Scalar disc = field->mul(B, B) - field->mul(Scalar(4), field->mul(A, C));
      criterion = field->sign(disc) >= 0;
    }
  }
  const MeridianSet meridians = invariant_meridians(build_cubic(params, field));
  const bool four = !meridians.infinite && meridians.count_with_multiplicity() == 4;
  if (four != criterion)
    throw std::logic_error("four-meridian criterion disagrees with the computed meridian count");
  return criterion;
}

}  // namespace torus
