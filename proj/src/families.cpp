#include "torus/families.hpp"

#include "torus/errors.hpp"

namespace torus {

namespace {

struct Vars {
  MultiPoly x, y, z, one;
  explicit Vars(const FieldPtr& f)
      : x(MultiPoly::variable(f, Var::X)),
        y(MultiPoly::variable(f, Var::Y)),
        z(MultiPoly::variable(f, Var::Z)),
        one(MultiPoly::constant(f, Scalar(1))) {}
};

const Rational kQuarter(1, 4);
const Rational kHalf(1, 2);

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::DegreeOne: return "DegreeOne";
    case Family::Quadratic: return "Quadratic";
    case Family::Kolmogorov: return "Kolmogorov";
    case Family::TwoParallel: return "TwoParallel";
    case Family::PseudoType: return "PseudoType";
    case Family::Cubic: return "Cubic";
    case Family::OnTorusUnclassified: return "OnTorusUnclassified";
    case Family::NotOnTorus: return "NotOnTorus";
  }
  return "?";
}

MultiPoly torus_companion(const FieldPtr& field) {
  const Vars v(field);
  const Rational& m = field->m();
  return Scalar(Rational(-m)) * (v.x * v.x + v.y * v.y) + v.z * v.z +
         MultiPoly::constant(field, Scalar(Rational(m * m - 1)));
}

VectorField build_cubic(const CubicParams& params, const FieldPtr& field) {
  if (params.k_prime.degree() > 1) throw DegreeViolation("K' must have degree <= 1");
  if (params.f.degree() > 2) throw DegreeViolation("f must have degree <= 2");
  const Vars v(field);
  const MultiPoly K = params.k_prime * v.z;
  const MultiPoly radial = v.x * v.x + v.y * v.y - MultiPoly::constant(field, Scalar(field->m()));
  MultiPoly P = Scalar(kQuarter) * K * v.x + params.f * v.y + params.beta * v.z;
  MultiPoly Q = Scalar(kQuarter) * K * v.y - params.f * v.x + params.gamma * v.z;
  MultiPoly R = Scalar(kHalf) * params.k_prime * torus_companion(field) -
                Scalar(2) * (params.beta * v.x + params.gamma * v.y) * radial;
  return {std::move(P), std::move(Q), std::move(R)};
}

VectorField build_kolmogorov(const KolmogorovParams& params, const FieldPtr& field) {
  const Vars v(field);
  const MultiPoly K = params.c2 * v.z * v.z;
  MultiPoly P = Scalar(kQuarter) * K * v.x + params.c1 * v.x * v.y * v.y;
  MultiPoly Q = Scalar(kQuarter) * K * v.y - params.c1 * v.x * v.x * v.y;
  MultiPoly R = (params.c2 * kHalf) * v.z * torus_companion(field);
  return {std::move(P), std::move(Q), std::move(R)};
}

VectorField build_quadratic(const QuadraticParams& params, const FieldPtr& field) {
  if (params.f.degree() > 1) throw DegreeViolation("f must be linear");
  const Vars v(field);
  MultiPoly P = (params.alpha * kQuarter) * v.x * v.z + params.f * v.y;
  MultiPoly Q = (params.alpha * kQuarter) * v.y * v.z - params.f * v.x;
  MultiPoly R = (params.alpha * kHalf) * torus_companion(field);
  return {std::move(P), std::move(Q), std::move(R)};
}

VectorField build_pseudo_type(const PseudoTypeParams& params, const FieldPtr& field) {
  if (params.n < 1) throw DegreeViolation("pseudo-type degree must be >= 1");
  if (params.A.is_zero() || !params.A.is_homogeneous() || params.A.degree() != params.n - 1)
    throw DegreeViolation("A must be homogeneous of degree n - 1");
  const Vars v(field);
  return {params.A * v.y, -(params.A * v.x), MultiPoly(field)};
}

VectorField build_two_parallel(const TwoParallelParams& params, const FieldPtr& field) {
  if (params.f.degree() > 2) throw DegreeViolation("f must have degree <= 2");
  const Vars v(field);
  const MultiPoly lin = params.p * v.x + params.q * v.y;
  const Rational half_m = field->m() / 2;
  MultiPoly P = Scalar(kHalf) * v.x * v.z * lin + params.f * v.y - (params.p * half_m) * v.z;
  MultiPoly Q = Scalar(kHalf) * v.y * v.z * lin - params.f * v.x - (params.q * half_m) * v.z;
  MultiPoly R = lin * (v.z * v.z - v.one);
  return {std::move(P), std::move(Q), std::move(R)};
}

VectorField build_degree_one(const DegreeOneParams& params, const FieldPtr& field) {
  const Vars v(field);
  return {params.c * v.y, -(params.c * v.x), MultiPoly(field)};
}

std::optional<MultiPoly> rotation_factor(const VectorField& chi) {
  if (!chi.R.is_zero()) return std::nullopt;
  auto A = divide_by_variable(chi.P, Var::Y);
  if (!A) return std::nullopt;
  if (chi.Q != -(*A * MultiPoly::variable(chi.field(), Var::X))) return std::nullopt;
  return A;
}

std::vector<FamilyTag> recognize_all(const VectorField& chi) {
  const FieldPtr& field = chi.field();
  const TorusSurface torus(field);
  const auto cof = cofactor_on_torus(chi, torus);
  if (!cof.on_torus) return {};
  const MultiPoly& K = *cof.K;
  const Vars v(field);
  const int n = chi.degree();
  std::vector<FamilyTag> tags;

  if (n <= 1) {
    DegreeOneParams p{chi.P.coeff(Monomial(0, 1, 0))};
    if (build_degree_one(p, field) == chi) tags.push_back({Family::DegreeOne, p});
  }

  if (n == 2) {
    const Scalar alpha = K.coeff(Monomial(0, 0, 1));
    auto f = divide_by_variable(chi.P - (alpha * kQuarter) * v.x * v.z, Var::Y);
    if (f && f->degree() <= 1) {
      QuadraticParams p{alpha, *f};
      if (build_quadratic(p, field) == chi) tags.push_back({Family::Quadratic, p});
    }
  }

  if (n == 3) {
    KolmogorovParams p{chi.P.coeff(Monomial(1, 2, 0)), K.coeff(Monomial(0, 0, 2))};
    if (build_kolmogorov(p, field) == chi) tags.push_back({Family::Kolmogorov, p});
  }

  if (n >= 2 && n <= 3) {
    const Scalar p = chi.R.coeff(Monomial(1, 0, 2));
    const Scalar q = chi.R.coeff(Monomial(0, 1, 2));
    if (!p.is_zero() || !q.is_zero()) {
      const MultiPoly lin = p * v.x + q * v.y;
      const Rational half_m = field->m() / 2;
      auto f = divide_by_variable(chi.P - Scalar(kHalf) * v.x * v.z * lin + (p * half_m) * v.z, Var::Y);
      if (f && f->degree() <= 2) {
        TwoParallelParams params{p, q, *f};
        if (build_two_parallel(params, field) == chi) tags.push_back({Family::TwoParallel, params});
      }
    }
  }

  if (n >= 1 && chi.P.is_homogeneous() && chi.Q.is_homogeneous()) {
    if (auto A = rotation_factor(chi); A && !A->is_zero()) tags.push_back({Family::PseudoType, PseudoTypeParams{n, *A}});
  }

  if (n >= 0 && n <= 3) {
    auto k_prime = divide_exact_z(K, v.z);
    if (k_prime && k_prime->degree() <= 1) {
      const Scalar beta = chi.P.coeff(Monomial(0, 0, 1));
      const Scalar gamma = chi.Q.coeff(Monomial(0, 0, 1));
      auto f = divide_by_variable(chi.P - Scalar(kQuarter) * K * v.x - beta * v.z, Var::Y);
      if (f && f->degree() <= 2) {
        CubicParams p{*k_prime, *f, beta, gamma};
        if (build_cubic(p, field) == chi) tags.push_back({Family::Cubic, p});
      }
    }
  }

  if (tags.empty()) tags.push_back({Family::OnTorusUnclassified, std::monostate{}});
  return tags;
}

FamilyTag recognize(const VectorField& chi) {
  auto tags = recognize_all(chi);
  if (tags.empty()) return FamilyTag{Family::NotOnTorus, std::monostate{}};
  return tags.front();
}

std::vector<RationalFn> canonical_first_integrals(const FamilyTag& tag, const FieldPtr& field) {
  const Vars v(field);
  const MultiPoly rho = v.x * v.x + v.y * v.y;
  switch (tag.family) {
    case Family::Kolmogorov:
    case Family::Quadratic:
      return {RationalFn(TorusSurface(field).F(), rho * rho)};
    case Family::PseudoType:
    case Family::DegreeOne:
      return {RationalFn::polynomial(rho), RationalFn::polynomial(v.z)};
    default:
      throw NoKnownIntegral("no closed-form first integral known for family " + to_string(tag.family));
  }
}

}  // namespace torus
