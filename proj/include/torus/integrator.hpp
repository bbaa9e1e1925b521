#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "torus/vector_field.hpp"

namespace torus {

struct Sample {
  double t = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double theta = 0.0;  // atan2(y, x)
  double phi = 0.0;    // atan2(z, x^2 + y^2 - m)

  Eigen::Vector3d point() const { return {x, y, z}; }
  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Trajectory {
  double m = 4.0;
  bool projected = false;
  std::vector<Sample> samples;
};

struct IntegrateOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  bool project = false;
  /// Keep every k-th step (the last step is always kept).
  int stride = 1;
};

/// Classical fixed-step RK4. With `project` each step is followed by one
/// Newton step along grad F back towards F = 0. Throws StepOverflow when the
/// state leaves the ball of radius 1e6 and std::invalid_argument unless dt > 0
/// and t_end > 0.
Trajectory integrate(const VectorField& chi, const Eigen::Vector3d& start, const IntegrateOptions& opts);

/// Header "t,x,y,z,theta,phi" then one row per sample, 17 significant digits.
std::string to_csv(const Trajectory& traj);

/// Array of {"t","x","y","z","theta","phi"} records; numbers in shortest round-trip form.
std::string to_json(const Trajectory& traj);

/// Reads the output of to_json back. Throws std::invalid_argument on malformed input.
std::vector<Sample> samples_from_json(const std::string& text);

}  // namespace torus
