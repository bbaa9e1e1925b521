#include "torus/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "torus/errors.hpp"

namespace torus {

namespace {

constexpr double kEscapeRadius = 1e6;

struct Rhs {
  FloatPoly P, Q, R;
  explicit Rhs(const VectorField& chi) : P(chi.P), Q(chi.Q), R(chi.R) {}
  Eigen::Vector3d operator()(const Eigen::Vector3d& p) const { return {P(p), Q(p), R(p)}; }
};

Eigen::Vector3d rk4_step(const Rhs& f, const Eigen::Vector3d& p, double h) {
  const Eigen::Vector3d k1 = f(p);
  const Eigen::Vector3d k2 = f(p + 0.5 * h * k1);
  const Eigen::Vector3d k3 = f(p + 0.5 * h * k2);
  const Eigen::Vector3d k4 = f(p + h * k3);
  return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::Vector3d project_to_torus(const Eigen::Vector3d& p, double m) {
  const double radial = p.x() * p.x() + p.y() * p.y() - m;
  const double F = radial * radial + p.z() * p.z() - 1.0;
  const Eigen::Vector3d grad(4.0 * p.x() * radial, 4.0 * p.y() * radial, 2.0 * p.z());
  const double g2 = grad.squaredNorm();
  if (g2 == 0.0) return p;
  return p - (F / g2) * grad;
}

Sample make_sample(double t, const Eigen::Vector3d& p, double m) {
  return {t, p.x(), p.y(), p.z(), std::atan2(p.y(), p.x()), std::atan2(p.z(), p.x() * p.x() + p.y() * p.y() - m)};
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Trajectory integrate(const VectorField& chi, const Eigen::Vector3d& start, const IntegrateOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(opts.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (opts.stride < 1) throw std::invalid_argument("stride must be >= 1");
  const double m = chi.field()->m_double();
  const Rhs f(chi);
  Trajectory traj;
  traj.m = m;
  traj.projected = opts.project;

  const auto steps = static_cast<long long>(std::ceil(opts.t_end / opts.dt - 1e-9));
  Eigen::Vector3d p = start;
  traj.samples.push_back(make_sample(0.0, p, m));
  for (long long k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * opts.dt;
    const double t = k == steps ? opts.t_end : static_cast<double>(k) * opts.dt;
    p = rk4_step(f, p, t - t_prev);
    if (opts.project) p = project_to_torus(p, m);
    if (!p.allFinite() || p.norm() > kEscapeRadius)
      throw StepOverflow("state left the ball of radius 1e6 at t = " + format_number(t));
    if (k % opts.stride == 0 || k == steps) traj.samples.push_back(make_sample(t, p, m));
  }
  return traj;
}

std::string to_csv(const Trajectory& traj) {
  std::string out = "t,x,y,z,theta,phi\n";
  for (const auto& s : traj.samples) {
    out += format_number(s.t) + ',' + format_number(s.x) + ',' + format_number(s.y) + ',' + format_number(s.z) +
           ',' + format_number(s.theta) + ',' + format_number(s.phi) + '\n';
  }
  return out;
}

std::string to_json(const Trajectory& traj) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : traj.samples) {
    arr.push_back({{"t", s.t}, {"x", s.x}, {"y", s.y}, {"z", s.z}, {"theta", s.theta}, {"phi", s.phi}});
  }
  return arr.dump(2) + '\n';
}

std::vector<Sample> samples_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("trajectory JSON: ") + e.what());
  }
  if (!arr.is_array()) throw std::invalid_argument("trajectory JSON must be an array");
  std::vector<Sample> out;
  for (const auto& rec : arr) {
    try {
      out.push_back({rec.at("t").get<double>(), rec.at("x").get<double>(), rec.at("y").get<double>(),
                     rec.at("z").get<double>(), rec.at("theta").get<double>(), rec.at("phi").get<double>()});
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("trajectory record: ") + e.what());
    }
  }
  return out;
}

}  // namespace torus
