#pragma once

#include <functional>
#include <vector>

#include "dwbec/core_model.hpp"
#include "dwbec/numerics.hpp"
#include "dwbec/quantum_dynamics.hpp"

namespace dwbec {

/// Two-qubit density matrix in the (LL, LR, RL, RR) basis.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity; the exception message
  /// names the violated property.
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix from_pure(const QuantumState& s);

  const CMatrix& entries() const noexcept { return rho_; }

 private:
  CMatrix rho_;
};

/// C(rho) = max{0, l1 - l2 - l3 - l4}, l_i the decreasing square roots of the
/// eigenvalues of rho * (sy x sy) rho* (sy x sy).
double concurrence_mixed(const DensityMatrix& rho);

/// 2|a d - b c| for amplitudes (a, b, c, d).
double concurrence_pure(const QuantumState& s);

struct ConcurrencePoint {
  double t;
  double c;
};

/// Concurrence of |LR> evolved under the effective Hamiltonian at each time.
std::vector<ConcurrencePoint> concurrence_trace(const ModelParams& p,
                                                const std::vector<double>& t_grid);

/// Same as concurrence_trace but for one time, reusing a prepared propagator.
class ConcurrenceEvaluator {
 public:
  explicit ConcurrenceEvaluator(const ModelParams& p);
  double operator()(double t) const;
  QuantumState state(double t) const;

 private:
  Propagator prop_;
  std::vector<Complex> coeffs_;
};

/// (2 kappa / omega^2)(pi/4 + k pi/2). Requires omega > 0 and kappa > 0.
double peak_time_formula(const ModelParams& p, int k);

struct PeakReport {
  int k_index = 0;
  double t_peak_numeric = 0.0;
  double t_peak_formula = 0.0;
  double c_peak = 0.0;
  double tau_half_width = 0.0;
};

/// Lobes of C(t) below this level are not counted as peaks.
inline constexpr double kWeakEntanglement = 0.1;

/// Width of the contiguous interval around t_peak where f >= level, with
/// both crossings bisected to `tol`. `step` is the outward scan resolution.
double level_crossing_width(const std::function<double(double)>& f, double t_peak, double level,
                            double step, double t_lo, double t_hi, double tol = 1e-10);

/// Golden-section maximization of f on [a, b] to relative tolerance `rel_tol`.
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-6);

/// Peak search on an arbitrary trace: grid scan at `grid_dt` over [0, t_max],
/// one peak per lobe above kWeakEntanglement, a scan of each lobe at `refine_dt`
/// (default grid_dt/20), golden-section refinement, and half
/// width at c_peak/sqrt2. t_peak_formula is left at 0.
std::vector<PeakReport> find_peaks(const std::function<double(double)>& c, double t_max,
                                   int n_peaks, double grid_dt, double refine_dt = 0.0);

/// Peaks of the effective-model concurrence trace, scanned at 0.05 kappa/omega^2.
/// Returns fewer than n_peaks reports when the trace stays weakly entangled.
std::vector<PeakReport> find_peaks(const ModelParams& p, double t_max, int n_peaks);

}  // namespace dwbec
