#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "torus/dynamics.hpp"
#include "torus/families.hpp"
#include "torus/invariant_curves.hpp"

namespace torus {

inline constexpr const char* kSchema = "torus-fields/1";
inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct ReportOptions {
  int grid = 512;
  std::optional<std::uint64_t> seed;
};

/// Family tag with its parameters; polynomials and scalars as parseable text.
Json family_json(const FamilyTag& tag);
Json meridians_json(const MeridianSet& set, const FieldPtr& field);
Json parallels_json(const ParallelSet& set, const FieldPtr& field);
Json singular_json(const SingularSet& set);
Json verdict_json(const PeriodicityVerdict& v);

/// Periodicity verdict for each invariant meridian (two per plane). Cubic
/// fields meeting the four-meridian criterion use the K' scan and report
/// limit-cycle stability; other fields use a tangential scan.
Json meridian_verdicts(const VectorField& chi, const FamilyTag& tag, const MeridianSet& set);

/// Periodicity verdict for each circle cut by an invariant parallel plane;
/// z = +-1 of a two-parallel field uses the Weierstrass route.
Json parallel_verdicts(const VectorField& chi, const FamilyTag& tag, const ParallelEntry& e);

/// Full analysis: membership, cofactor, family, invariant meridians and
/// parallels with periodicity verdicts, first integrals, singular set and the
/// 2(n - 1) meridian bound. Deterministic for identical input.
Json analysis_report(const VectorField& chi, const ReportOptions& opts = {});

}  // namespace torus
