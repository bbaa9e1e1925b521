// Command-line front end for the torus vector field toolkit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "torus/dynamics.hpp"
#include "torus/errors.hpp"
#include "torus/families.hpp"
#include "torus/integrator.hpp"
#include "torus/invariant_curves.hpp"
#include "torus/parser.hpp"
#include "torus/report.hpp"

using namespace torus;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotOnTorus = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string px = "0", qy = "0", rz = "0";
  std::string px2 = "0", qy2 = "0", rz2 = "0";
  std::string m = "4";
  bool json = false;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string num, den = "1";
  std::string start;
  double t_end = 10.0;
  double dt = 1e-3;
  int stride = 1;
  bool project = false;
  std::string format = "csv";
  int grid = 512;
};

FieldPtr make_field(const std::string& text) {
  Rational m;
  try {
    m = parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--m expects a rational number such as 4 or 9/4, got '" + text + "'");
  }
  if (m <= 1) throw UsageError("--m is a^2 and the torus needs a > 1, so m must exceed 1 (got " + text + ")");
  return Field::make(m);
}

// With a perfect-square m, a*x and its rational value are different
// polynomials to the exact comparisons, so say so when a appears.
void warn_square_root(const std::string& flag, const MultiPoly& p) {
  if (!p.field()->m_is_square()) return;
  for (const auto& t : p.terms()) {
    if (!t.coeff.is_rational()) {
      std::cerr << "warning: " << flag << " uses a, but m is a perfect square; exact comparisons treat a and "
                << "its rational value as different\n";
      return;
    }
  }
}

MultiPoly parse_arg(const std::string& flag, const std::string& text, const FieldPtr& field) {
  try {
    MultiPoly p = parse(text, field);
    warn_square_root(flag, p);
    return p;
  } catch (const SyntaxError& e) {
    std::ostringstream msg;
    msg << flag << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.offset(), ' ') << "^";
    throw UsageError(msg.str());
  } catch (const OverflowError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

VectorField field_from(const Options& o, const FieldPtr& field) {
  return {parse_arg("--px", o.px, field), parse_arg("--qy", o.qy, field), parse_arg("--rz", o.rz, field)};
}

Eigen::Vector3d parse_point(const std::string& text) {
  Eigen::Vector3d p;
  std::istringstream in(text);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 3) throw UsageError("--start expects three comma-separated numbers");
    try {
      std::size_t used = 0;
      p[i++] = std::stod(part, &used);
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw UsageError("--start: cannot read '" + part + "' as a number");
    }
  }
  if (i != 3) throw UsageError("--start expects three comma-separated numbers");
  return p;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  int check() {
    const VectorField chi = load();
    const auto cof = cofactor_on_torus(chi, TorusSurface(chi.field()));
    if (o_.json) {
      Json j{{"on_torus", cof.on_torus}, {"cofactor", cof.K ? Json(serialize(*cof.K)) : Json(nullptr)}};
      out_ << render(j);
    } else if (cof.on_torus) {
      out_ << "on torus, cofactor K = " << serialize(*cof.K) << "\n";
    } else {
      out_ << "NOT on torus\n";
    }
    return cof.on_torus ? kExitOk : kExitNotOnTorus;
  }

  int bracket() {
    const VectorField X = load();
    const VectorField Y{parse_arg("--px2", o_.px2, field_), parse_arg("--qy2", o_.qy2, field_),
                        parse_arg("--rz2", o_.rz2, field_)};
    const VectorField B = lie_bracket(X, Y);
    const auto cof = cofactor_on_torus(B, TorusSurface(field_));
    if (o_.json) {
      out_ << render(Json{{"P", serialize(B.P)}, {"Q", serialize(B.Q)}, {"R", serialize(B.R)},
                          {"on_torus", cof.on_torus}});
    } else {
      out_ << "P = " << serialize(B.P) << "\nQ = " << serialize(B.Q) << "\nR = " << serialize(B.R) << "\n";
    }
    return kExitOk;
  }

  int extactic() {
    const VectorField chi = load();
    const MultiPoly E = extactic_xy(chi);
    if (o_.json)
      out_ << render(Json{{"extactic", serialize(E)}});
    else
      out_ << "E = " << serialize(E) << "\n";
    return kExitOk;
  }

  int meridians() {
    const VectorField chi = load();
    if (!on_torus(chi)) return kExitNotOnTorus;
    const MeridianSet set = invariant_meridians(chi);
    Json j = meridians_json(set, field_);
    j["verdicts"] = meridian_verdicts(chi, recognize(chi), set);
    if (o_.json) {
      out_ << render(j);
      return kExitOk;
    }
    if (set.infinite) {
      out_ << "every meridian is invariant\n";
      return kExitOk;
    }
    out_ << set.count() << " invariant meridians (" << set.count_with_multiplicity()
         << " with multiplicity) in " << set.planes.size() << " plane(s)\n";
    for (const auto& p : j["planes"]) {
      out_ << "  " << (p["equation"].is_null() ? "unit normal " + p["unit"].dump() : p["equation"].get<std::string>())
           << "  multiplicity " << p["multiplicity"].get<int>() << (p["exact"].get<bool>() ? "  exact" : "  numeric")
           << "\n";
    }
    for (const auto& v : j["verdicts"]) {
      if (v.contains("theta")) out_ << "  theta = " << v["theta"].get<double>() << ": " << v["verdict"].get<std::string>() << "\n";
    }
    return kExitOk;
  }

  int parallels() {
    const VectorField chi = load();
    if (!on_torus(chi)) return kExitNotOnTorus;
    const ParallelSet set = invariant_parallels(chi);
    Json j = parallels_json(set, field_);
    const FamilyTag tag = recognize(chi);
    if (!set.infinite)
      for (std::size_t i = 0; i < set.planes.size(); ++i)
        j["planes"][i]["verdicts"] = parallel_verdicts(chi, tag, set.planes[i]);
    if (o_.json) {
      out_ << render(j);
      return kExitOk;
    }
    if (set.infinite) {
      out_ << "every parallel is invariant\n";
      return kExitOk;
    }
    out_ << set.count() << " invariant parallels in " << set.plane_count() << " plane(s)\n";
    for (const auto& p : j["planes"]) {
      out_ << "  " << (p["equation"].is_null() ? "z = " + p["k"].dump() : p["equation"].get<std::string>())
           << "  multiplicity " << p["multiplicity"].get<int>() << "\n";
      for (const auto& v : p["verdicts"])
        out_ << "    " << v["circle"].get<std::string>() << ": " << v["verdict"].get<std::string>() << "\n";
    }
    return kExitOk;
  }

  int classify() {
    const VectorField chi = load();
    if (!on_torus(chi)) return kExitNotOnTorus;
    const auto tags = recognize_all(chi);
    Json j = family_json(tags.front());
    Json also = Json::array();
    for (std::size_t i = 1; i < tags.size(); ++i) also.push_back(family_json(tags[i]));
    j["also_matches"] = std::move(also);
    if (o_.json) {
      out_ << render(j);
      return kExitOk;
    }
    out_ << "family " << j["tag"].get<std::string>() << "\n";
    for (const auto& [k, v] : j["params"].items()) out_ << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& a : j["also_matches"]) out_ << "also " << a["tag"].get<std::string>() << "\n";
    return kExitOk;
  }

  int singular() {
    const VectorField chi = load();
    if (!on_torus(chi)) return kExitNotOnTorus;
    const SingularSet set = singular_points(chi, recognize(chi), SingularOptions{o_.grid});
    if (o_.json) {
      out_ << render(singular_json(set));
      return kExitOk;
    }
    out_ << "singular set: " << to_string(set.kind) << (set.numerical_only ? " (numerical only)" : "") << "\n";
    if (!set.description.empty()) out_ << "  " << set.description << "\n";
    for (const auto& p : set.points) {
      out_ << "  (" << p.point.x() << ", " << p.point.y() << ", " << p.point.z() << ")  "
           << (p.cls ? to_string(*p.cls) : std::string("unclassified (z = 0)")) << "\n";
    }
    for (const auto& w : set.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
  }

  int first_integral() {
    const VectorField chi = load();
    std::vector<RationalFn> candidates;
    if (!o_.num.empty()) {
      MultiPoly den = parse_arg("--den", o_.den, field_);
      if (den.is_zero()) throw UsageError("--den must be a nonzero polynomial");
      candidates.emplace_back(parse_arg("--num", o_.num, field_), std::move(den));
    } else {
      if (!on_torus(chi)) return kExitNotOnTorus;
      try {
        candidates = canonical_first_integrals(recognize(chi), field_);
      } catch (const NoKnownIntegral& e) {
        if (o_.json)
          out_ << render(Json::array());
        else
          out_ << e.what() << "\n";
        return kExitOk;
      }
    }
    Json j = Json::array();
    for (const auto& H : candidates)
      j.push_back({{"num", serialize(H.num)}, {"den", serialize(H.den)}, {"verified", check_first_integral(chi, H)}});
    if (o_.json) {
      out_ << render(j);
    } else {
      for (const auto& h : j)
        out_ << "H = (" << h["num"].get<std::string>() << ") / (" << h["den"].get<std::string>() << "): "
             << (h["verified"].get<bool>() ? "first integral" : "not a first integral") << "\n";
    }
    return kExitOk;
  }

  int integrate_cmd() {
    const VectorField chi = load();
    if (o_.start.empty()) throw UsageError("integrate needs --start x,y,z");
    if (o_.format != "csv" && o_.format != "json") throw UsageError("--format must be csv or json");
    const Trajectory traj = integrate(chi, parse_point(o_.start), {o_.t_end, o_.dt, o_.project, o_.stride});
    out_ << (o_.format == "csv" ? to_csv(traj) : to_json(traj));
    return kExitOk;
  }

  int report() {
    const VectorField chi = load();
    const Json j = analysis_report(chi, ReportOptions{o_.grid, o_.seed});
    out_ << render(j);
    return j["on_torus"].get<bool>() ? kExitOk : kExitNotOnTorus;
  }

  std::string output() const { return out_.str(); }

 private:
  VectorField load() {
    field_ = make_field(o_.m);
    return field_from(o_, field_);
  }

  bool on_torus(const VectorField& chi) {
    if (cofactor_on_torus(chi, TorusSurface(field_)).on_torus) return true;
    if (o_.json)
      out_ << render(Json{{"on_torus", false}});
    else
      out_ << "NOT on torus\n";
    return false;
  }

  const Options& o_;
  FieldPtr field_;
  std::ostringstream out_;
};

void add_field_flags(CLI::App* sub, Options& o) {
  sub->add_option("--px", o.px, "P component");
  sub->add_option("--qy", o.qy, "Q component");
  sub->add_option("--rz", o.rz, "R component");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Polynomial vector fields on the torus (x^2 + y^2 - a^2)^2 + z^2 = 1"};
  app.require_subcommand(1);
  app.add_option("--m", o.m, "m = a^2 as a rational, must exceed 1")->capture_default_str();
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--out", o.out, "write output to this file");
  app.add_option("--seed", o.seed, "seed recorded in reports (all scans are deterministic)");
  app.add_option("--grid", o.grid, "grid resolution for singular-point scans")->check(CLI::Range(16, 4096));
  app.fallthrough();

  auto* check = app.add_subcommand("check", "test invariance of the torus and print the cofactor");
  auto* bracket = app.add_subcommand("bracket", "Lie bracket of two fields");
  auto* extactic = app.add_subcommand("extactic", "extactic polynomial Q x - P y");
  auto* meridians = app.add_subcommand("meridians", "invariant meridians and their periodicity");
  auto* parallels = app.add_subcommand("parallels", "invariant parallels and their periodicity");
  auto* classify = app.add_subcommand("classify", "recognize the family of an on-torus field");
  auto* singular = app.add_subcommand("singular", "singular points on the torus");
  auto* first_integral = app.add_subcommand("first-integral", "verify a rational first integral");
  auto* integrate_sub = app.add_subcommand("integrate", "RK4 trajectory export");
  auto* report = app.add_subcommand("report", "full JSON analysis report");
  for (auto* sub : {check, bracket, extactic, meridians, parallels, classify, singular, first_integral, integrate_sub,
                    report})
    add_field_flags(sub, o);
  bracket->add_option("--px2", o.px2, "P component of the second field");
  bracket->add_option("--qy2", o.qy2, "Q component of the second field");
  bracket->add_option("--rz2", o.rz2, "R component of the second field");
  first_integral->add_option("--num", o.num, "numerator of H (default: known integrals of the family)");
  first_integral->add_option("--den", o.den, "denominator of H")->capture_default_str();
  integrate_sub->add_option("--start", o.start, "start point x,y,z")->required();
  integrate_sub->add_option("--t-end", o.t_end, "final time")->capture_default_str();
  integrate_sub->add_option("--dt", o.dt, "step size")->capture_default_str();
  integrate_sub->add_option("--stride", o.stride, "keep every k-th step")->capture_default_str();
  integrate_sub->add_flag("--project", o.project, "re-project onto the torus after each step");
  integrate_sub->add_option("--format", o.format, "csv or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Runner runner(o);
  int code = kExitOk;
  try {
    if (*check) code = runner.check();
    else if (*bracket) code = runner.bracket();
    else if (*extactic) code = runner.extactic();
    else if (*meridians) code = runner.meridians();
    else if (*parallels) code = runner.parallels();
    else if (*classify) code = runner.classify();
    else if (*singular) code = runner.singular();
    else if (*first_integral) code = runner.first_integral();
    else if (*integrate_sub) code = runner.integrate_cmd();
    else if (*report) code = runner.report();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (o.out.empty()) {
    std::cout << runner.output();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << o.out << " for writing\n";
      return kExitUsage;
    }
    file << runner.output();
  }
  return code;
}
