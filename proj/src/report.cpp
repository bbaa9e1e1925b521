#include "torus/report.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "torus/errors.hpp"
#include "torus/parser.hpp"

namespace torus {

namespace {

Json point_json(const Eigen::Vector3d& p) { return Json::array({p.x(), p.y(), p.z()}); }

struct ParamsVisitor {
  Json operator()(std::monostate) const { return Json::object(); }
  Json operator()(const DegreeOneParams& p) const { return {{"c", to_string(p.c)}}; }
  Json operator()(const QuadraticParams& p) const { return {{"alpha", to_string(p.alpha)}, {"f", serialize(p.f)}}; }
  Json operator()(const KolmogorovParams& p) const { return {{"c1", to_string(p.c1)}, {"c2", to_string(p.c2)}}; }
  Json operator()(const TwoParallelParams& p) const {
    return {{"p", to_string(p.p)}, {"q", to_string(p.q)}, {"f", serialize(p.f)}};
  }
  Json operator()(const PseudoTypeParams& p) const { return {{"n", p.n}, {"A", serialize(p.A)}}; }
  Json operator()(const CubicParams& p) const {
    return {{"k_prime", serialize(p.k_prime)},
            {"f", serialize(p.f)},
            {"beta", to_string(p.beta)},
            {"gamma", to_string(p.gamma)}};
  }
};

Json plane_json(const MeridianPlane& plane, const FieldPtr& field) {
  Json j;
  if (plane.exact_coeffs) {
    const auto& [a, b] = *plane.exact_coeffs;
    const MultiPoly eq = a * MultiPoly::variable(field, Var::X) + b * MultiPoly::variable(field, Var::Y);
    j["equation"] = serialize(eq) + " = 0";
    j["a"] = to_string(a);
    j["b"] = to_string(b);
  } else {
    j["equation"] = nullptr;
  }
  j["unit"] = Json::array({plane.unit[0], plane.unit[1]});
  j["exact"] = plane.exact;
  j["angle"] = plane.angle();
  return j;
}

}  // namespace

Json meridians_json(const MeridianSet& set, const FieldPtr& field) {
  Json j;
  j["infinite"] = set.infinite;
  if (set.infinite) return j;
  j["count"] = set.count();
  j["count_with_multiplicity"] = set.count_with_multiplicity();
  Json planes = Json::array();
  for (const auto& e : set.planes) {
    Json p = plane_json(e.plane, field);
    p["multiplicity"] = e.multiplicity;
    p["residual"] = e.residual;
    planes.push_back(std::move(p));
  }
  j["planes"] = std::move(planes);
  return j;
}

namespace {

Json parallel_plane_json(const ParallelEntry& e, const FieldPtr& field) {
  Json p;
  if (e.plane.exact_k) {
    const MultiPoly eq = MultiPoly::variable(field, Var::Z) - MultiPoly::constant(field, *e.plane.exact_k);
    p["equation"] = serialize(eq) + " = 0";
  } else {
    p["equation"] = nullptr;
  }
  p["k"] = e.plane.exact_k ? Json(to_string(*e.plane.exact_k)) : Json(e.plane.k);
  p["k_value"] = e.plane.k;
  p["exact"] = e.plane.exact;
  p["multiplicity"] = e.multiplicity;
  p["circles"] = e.plane.circle_count();
  return p;
}

}  // namespace

Json meridian_verdicts(const VectorField& chi, const FamilyTag& tag, const MeridianSet& set) {
  Json out = Json::array();
  if (set.infinite) return out;
  if (const auto* cubic = std::get_if<CubicParams>(&tag.params)) {
    try {
      if (check_four_meridian_criterion(*cubic, chi.field())) {
        for (const auto& mv : meridian_periodicity(*cubic, chi.field())) {
          Json v = verdict_json(mv.verdict);
          v["theta"] = mv.theta;
          v["method"] = "K' scan on the meridian";
          out.push_back(std::move(v));
        }
        return out;
      }
    } catch (const std::logic_error& e) {
      Json v;
      v["warning"] = e.what();
      out.push_back(std::move(v));
    }
  }
  std::vector<double> thetas;
  for (const auto& e : set.planes) {
    thetas.push_back(e.plane.angle());
    thetas.push_back(e.plane.angle() + std::numbers::pi);
  }
  std::sort(thetas.begin(), thetas.end());
  for (double th : thetas) {
    Json v = verdict_json(meridian_orbit_verdict(chi, th));
    v["theta"] = th;
    v["method"] = "tangential scan";
    out.push_back(std::move(v));
  }
  return out;
}

Json parallel_verdicts(const VectorField& chi, const FamilyTag& tag, const ParallelEntry& e) {
  Json out = Json::array();
  const double k = e.plane.k;
  const bool pole = e.plane.circle_count() == 1;
  if (const auto* tp = std::get_if<TwoParallelParams>(&tag.params); tp && pole) {
    Json v = verdict_json(parallel_periodicity(*tp, chi.field(), k > 0 ? 1 : -1));
    v["circle"] = "x^2 + y^2 = m";
    v["method"] = "Weierstrass substitution";
    out.push_back(std::move(v));
    return out;
  }
  for (int side : pole ? std::vector<int>{0} : std::vector<int>{1, -1}) {
    Json v = verdict_json(parallel_orbit_verdict(chi, k, side == 0 ? 1 : side));
    v["circle"] = side == 0 ? "x^2 + y^2 = m" : (side > 0 ? "outer" : "inner");
    v["method"] = "tangential scan";
    out.push_back(std::move(v));
  }
  return out;
}

Json family_json(const FamilyTag& tag) {
  return {{"tag", to_string(tag.family)}, {"params", std::visit(ParamsVisitor{}, tag.params)}};
}

Json parallels_json(const ParallelSet& set, const FieldPtr& field) {
  Json j;
  j["infinite"] = set.infinite;
  if (set.infinite) return j;
  j["plane_count"] = set.plane_count();
  j["count"] = set.count();
  j["count_with_multiplicity"] = set.count_with_multiplicity();
  Json planes = Json::array();
  for (const auto& e : set.planes) planes.push_back(parallel_plane_json(e, field));
  j["planes"] = std::move(planes);
  return j;
}

Json verdict_json(const PeriodicityVerdict& v) {
  Json j;
  j["verdict"] = to_string(v);
  if (v.witness) {
    j["witness"] = point_json(*v.witness);
    j["witness_param"] = v.witness_param;
    j["witness_residual"] = v.witness_residual;
  }
  return j;
}

Json singular_json(const SingularSet& set) {
  Json j;
  j["kind"] = to_string(set.kind);
  j["numerical_only"] = set.numerical_only;
  if (!set.description.empty()) j["description"] = set.description;
  Json pts = Json::array();
  for (const auto& p : set.points) {
    Json pj;
    pj["point"] = point_json(p.point);
    pj["class"] = p.cls ? Json(to_string(*p.cls)) : Json(nullptr);
    pj["residual"] = p.residual;
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  j["warnings"] = set.warnings;
  return j;
}

Json analysis_report(const VectorField& chi, const ReportOptions& opts) {
  const FieldPtr& field = chi.field();
  Json r;
  r["schema"] = kSchema;
  r["version"] = kVersion;
  r["input"] = {{"P", serialize(chi.P)}, {"Q", serialize(chi.Q)}, {"R", serialize(chi.R)}, {"m", to_string(field->m())}};
  r["input"]["seed"] = opts.seed ? Json(*opts.seed) : Json(nullptr);
  r["degree"] = chi.degree();

  const TorusSurface torus(field);
  const CofactorResult cof = cofactor_on_torus(chi, torus);
  r["on_torus"] = cof.on_torus;
  r["cofactor"] = cof.K ? Json(serialize(*cof.K)) : Json(nullptr);
  const auto tags = recognize_all(chi);
  const FamilyTag tag = tags.empty() ? FamilyTag{} : tags.front();
  r["family"] = family_json(tag);
  Json also = Json::array();
  for (std::size_t i = 1; i < tags.size(); ++i) also.push_back(family_json(tags[i]));
  r["family"]["also_matches"] = std::move(also);
  if (!cof.on_torus) return r;

  r["extactic"] = serialize(extactic_xy(chi));
  const MeridianSet meridians = invariant_meridians(chi);
  r["meridians"] = meridians_json(meridians, field);
  r["meridians"]["verdicts"] = meridian_verdicts(chi, tag, meridians);

  const ParallelSet parallels = invariant_parallels(chi);
  r["parallels"] = parallels_json(parallels, field);
  if (!parallels.infinite) {
    for (std::size_t i = 0; i < parallels.planes.size(); ++i)
      r["parallels"]["planes"][i]["verdicts"] = parallel_verdicts(chi, tag, parallels.planes[i]);
  }

  Json integrals = Json::array();
  try {
    for (const auto& H : canonical_first_integrals(tag, field)) {
      integrals.push_back(
          {{"num", serialize(H.num)}, {"den", serialize(H.den)}, {"verified", check_first_integral(chi, H)}});
    }
  } catch (const NoKnownIntegral&) {
  }
  r["first_integrals"] = std::move(integrals);

  r["singular_set"] = singular_json(singular_points(chi, tag, SingularOptions{opts.grid}));

  const int n = chi.degree();
  Json bounds;
  bounds["degree"] = n;
  bounds["bound"] = 2 * (n - 1);
  if (meridians.infinite) {
    bounds["applicable"] = false;
  } else {
    bounds["applicable"] = true;
    bounds["meridians"] = meridians.count();
    bounds["meridians_with_multiplicity"] = meridians.count_with_multiplicity();
    bounds["within_bound"] = meridians.count() <= 2 * (n - 1);
  }
  r["bounds_check"] = std::move(bounds);
  return r;
}

}  // namespace torus
