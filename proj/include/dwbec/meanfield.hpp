#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwbec/core_model.hpp"

namespace dwbec {

/// Raised when a mean-field state reaches the full-imbalance boundary
/// |2n| = N, where the phase equations diverge.
class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, double time)
      : std::domain_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

struct MeanFieldParams {
  ModelParams model;
  double n_total_a = 3.0;
  double n_total_b = 3.0;

  void validate() const;
};

/// Phase-space point: population differences n = (n_L - n_R)/2 and relative
/// phases theta = theta_L - theta_R of both components.
struct MeanFieldState {
  double n_a = 0.0;
  double n_b = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double t = 0.0;
};

/// Rate of change of (n_a, n_b, theta_a, theta_b).
using MeanFieldDerivative = std::array<double, 4>;

struct IntegrationWarning {
  double t;
  std::string message;
};

struct Trajectory {
  std::vector<MeanFieldState> samples;
  double energy0 = 0.0;
  std::vector<IntegrationWarning> warnings;
};

struct IntegrateOptions {
  /// Keep every `record_every`-th step (the initial and final states are always kept).
  std::size_t record_every = 1;
};

/// Distance from full imbalance below which states are rejected: 1e-9 * N.
inline constexpr double kSingularityMargin = 1e-9;

/// Stability heuristic: warn when dt * max|theta'| exceeds this many radians.
inline constexpr double kPhaseStepWarn = 0.1;

/// Classical energy H_cl including the constant interaction offsets.
/// Throws std::domain_error when |2n| > N for either component.
double classical_energy(const MeanFieldParams& p, const MeanFieldState& s);

/// (n_a', n_b', theta_a', theta_b'). Throws SingularityError (carrying s.t)
/// when a component is within the singularity margin of full imbalance.
MeanFieldDerivative equations_of_motion(const MeanFieldParams& p, const MeanFieldState& s);

/// Fixed-step RK4 from s0 to t_end. Throws SingularityError with the failing
/// time if a step leaves the valid domain.
Trajectory integrate(const MeanFieldParams& p, const MeanFieldState& s0, double t_end, double dt,
                     const IntegrateOptions& opts = {});

/// A left of B: n_a = +(N_A/2)(1 - eps), n_b = -(N_B/2)(1 - eps), zero phases.
MeanFieldState default_initial_state(const MeanFieldParams& p, double eps = 1e-3);

/// Spacing between the first two interior local maxima of the component's
/// POD, each refined by parabolic interpolation. Returns 0 if there are fewer
/// than two maxima.
double oscillation_period(const Trajectory& traj, Component c);

}  // namespace dwbec
