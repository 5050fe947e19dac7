#pragma once

// Data-parallel drivers. Each OpenMP kernel has a serial reference with the
// same signature; tests require bit-identical output from the two.

#include <cstddef>
#include <vector>

#include "dwbec/core_model.hpp"
#include "dwbec/meanfield.hpp"

namespace dwbec {

/// Concurrence on an (omega, t) grid, stored row-major by omega.
struct ConcurrenceGrid {
  std::vector<double> omegas;
  std::vector<double> times;
  std::vector<double> values;

  double at(std::size_t omega_index, std::size_t t_index) const {
    return values[omega_index * times.size() + t_index];
  }
};

/// `count` evenly spaced points from lo to hi inclusive (count >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// The omega field of `base` is replaced by each grid value.
ConcurrenceGrid sweep_concurrence_serial(const ModelParams& base,
                                         const std::vector<double>& omegas,
                                         const std::vector<double>& times);

/// threads <= 0 uses the OpenMP default.
ConcurrenceGrid sweep_concurrence_parallel(const ModelParams& base,
                                           const std::vector<double>& omegas,
                                           const std::vector<double>& times, int threads = 0);

/// Independent mean-field trajectories from each start state.
std::vector<Trajectory> integrate_batch_serial(const MeanFieldParams& p,
                                               const std::vector<MeanFieldState>& starts,
                                               double t_end, double dt,
                                               const IntegrateOptions& opts = {});

/// Rethrows the exception of the lowest-index failing trajectory.
std::vector<Trajectory> integrate_batch_parallel(const MeanFieldParams& p,
                                                 const std::vector<MeanFieldState>& starts,
                                                 double t_end, double dt,
                                                 const IntegrateOptions& opts = {},
                                                 int threads = 0);

}  // namespace dwbec
