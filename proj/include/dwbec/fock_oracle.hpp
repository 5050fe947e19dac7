#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dwbec/core_model.hpp"
#include "dwbec/numerics.hpp"
#include "dwbec/quantum_dynamics.hpp"

namespace dwbec {

/// Occupation-number basis |n_AL, n_BL> at fixed N_A, N_B. States are ordered
/// lexicographically in (n_AL, n_BL): index = n_AL * (N_B + 1) + n_BL.
class FockBasis {
 public:
  FockBasis(int n_a_total, int n_b_total);

  int n_a_total() const noexcept { return na_; }
  int n_b_total() const noexcept { return nb_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(na_ + 1) * (nb_ + 1); }

  std::size_t index(int n_al, int n_bl) const;
  /// (n_AL, n_BL) of a basis index.
  std::pair<int, int> occupation(std::size_t i) const;
  /// Index of the state with both components mirrored L <-> R.
  std::size_t mirror(std::size_t i) const;

 private:
  int na_;
  int nb_;
};

struct FockHamiltonian {
  FockBasis basis;
  CMatrix matrix;
};

inline constexpr std::size_t kDefaultFockDimCap = 4096;

/// Two-mode Hamiltonian with equal tunneling for both components. Throws
/// std::invalid_argument when (N_A + 1)(N_B + 1) exceeds `dim_cap`.
FockHamiltonian build_fock_hamiltonian(const ModelParams& p, int n_a, int n_b,
                                       std::size_t dim_cap = kDefaultFockDimCap);

/// <n_L - n_R> of a component.
double pod_expectation(const FockHamiltonian& h, const QuantumState& s, Component c);

/// Amplitude 1 on (n_AL, n_BL) = (N_A, 0).
QuantumState fock_initial_state(const FockBasis& basis);

/// For N_A = N_B = 1, the (LL, LR, RL, RR) index of a Fock index.
std::size_t effective_index_of_fock(std::size_t fock_index);

struct PodSample {
  double t;
  double pod_a;
  double pod_b;
};

/// Exact spectral evolution of fock_initial_state; POD of both components.
std::vector<PodSample> oracle_evolve_pod(const ModelParams& p, int n_a, int n_b,
                                         const std::vector<double>& t_grid);

/// Same evolution with a caller-supplied Hamiltonian and initial state.
std::vector<PodSample> evolve_pod(const FockHamiltonian& h, const QuantumState& s0,
                                  const std::vector<double>& t_grid);

/// Infinite-time average of <n_L - n_R>: sum over energy levels E of
/// <P_E psi|n_L - n_R|P_E psi>. Eigenvalues closer than `degeneracy_tol` form one level.
double diagonal_ensemble_pod(const FockHamiltonian& h, const QuantumState& s0, Component c,
                             double degeneracy_tol = 1e-9);

struct PodStatistics {
  double mean_a = 0.0;
  double var_a = 0.0;
  double mean_b = 0.0;
  double var_b = 0.0;
};

PodStatistics pod_statistics(const std::vector<PodSample>& trace);

}  // namespace dwbec
