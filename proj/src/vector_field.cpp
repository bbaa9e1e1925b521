#include "torus/vector_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "torus/errors.hpp"
#include "torus/unipoly.hpp"

namespace torus {

VectorField::VectorField(MultiPoly p, MultiPoly q, MultiPoly r) : P(std::move(p)), Q(std::move(q)), R(std::move(r)) {
  if (!same_field(P.field(), Q.field()) || !same_field(P.field(), R.field()))
    throw std::invalid_argument("vector field components over different fields");
}

int VectorField::degree() const { return std::max({P.degree(), Q.degree(), R.degree()}); }

TorusSurface::TorusSurface(FieldPtr field) : field_(std::move(field)), radial_(field_), F_(field_) {
  if (field_->m() <= 1) throw std::invalid_argument("torus requires m = a^2 > 1");
  const MultiPoly x = MultiPoly::variable(field_, Var::X);
  const MultiPoly y = MultiPoly::variable(field_, Var::Y);
  const MultiPoly z = MultiPoly::variable(field_, Var::Z);
  const MultiPoly one = MultiPoly::constant(field_, Scalar(1));
  radial_ = x * x + y * y - MultiPoly::constant(field_, Scalar(field_->m()));
  F_ = radial_ * radial_ + z * z - one;
}

RationalFn::RationalFn(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
}

RationalFn RationalFn::polynomial(MultiPoly n) {
  MultiPoly one = MultiPoly::constant(n.field(), Scalar(1));
  return RationalFn(std::move(n), std::move(one));
}

MultiPoly apply(const VectorField& chi, const MultiPoly& f) {
  MultiPoly out(chi.field());
  for (int i = 0; i < 3; ++i) {
    if (chi[i].is_zero()) continue;
    MultiPoly d = differentiate(f, static_cast<Var>(i));
    if (!d.is_zero()) out += chi[i] * d;
  }
  return out;
}

CofactorResult cofactor_on_torus(const VectorField& chi, const TorusSurface& torus) {
  auto K = divide_exact_z(apply(chi, torus.F()), torus.F());
  if (!K) return CofactorResult{};
  return CofactorResult{true, std::move(K)};
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  return {apply(X, Y.P) - apply(Y, X.P), apply(X, Y.Q) - apply(Y, X.Q), apply(X, Y.R) - apply(Y, X.R)};
}

bool check_first_integral(const VectorField& chi, const RationalFn& H) {
  if (H.den.is_constant()) return apply(chi, H.num).is_zero();
  return (H.den * apply(chi, H.num) - H.num * apply(chi, H.den)).is_zero();
}

namespace {

bool is_meridian_form(const MultiPoly& f) {
  if (f.is_zero()) return false;
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [](const Term& t) { return t.mono.degree() == 1 && t.mono.e[2] == 0; });
}

bool is_monic_in_z(const MultiPoly& f) {
  const int d = f.degree_in(Var::Z);
  return d >= 1 && coefficient_in(f, Var::Z, d).is_constant();
}

}  // namespace

CofactorResult invariant_surface_cofactor(const VectorField& chi, const MultiPoly& f) {
  std::optional<MultiPoly> K;
  if (is_monic_in_z(f)) {
    K = divide_exact_z(apply(chi, f), f);
  } else if (is_meridian_form(f)) {
    // a*x + b*y: divide along y when b != 0, along x otherwise.
    const Var along = f.degree_in(Var::Y) == 1 ? Var::Y : Var::X;
    K = divide_exact(apply(chi, f), f, along);
  } else {
    throw UnsupportedShape("invariant_surface_cofactor supports z-monic surfaces and meridian planes only");
  }
  if (!K) return CofactorResult{};
  return CofactorResult{true, std::move(K)};
}

}  // namespace torus
