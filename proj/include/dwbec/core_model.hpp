#pragma once

#include <array>
#include <string>

#include "dwbec/numerics.hpp"

namespace dwbec {

enum class Component { A, B };
enum class Well { L, R };

/// Couplings of the two-component double-well model (hbar = 1). Both
/// components share the tunneling rate `omega`.
struct ModelParams {
  double omega = 1.0;    // tunneling rate
  double kappa = 20.0;   // interspecies interaction
  double kappa_a = 20.0; // self-interaction, component A
  double kappa_b = 20.0; // self-interaction, component B

  /// Throws std::invalid_argument on non-finite fields or negative omega.
  void validate() const;
  std::string describe() const;
};

/// Index into the product basis (LL, LR, RL, RR); first letter is component A.
constexpr std::size_t basis_index(Well a, Well b) {
  return 2 * (a == Well::R ? 1 : 0) + (b == Well::R ? 1 : 0);
}

inline constexpr std::size_t kLL = basis_index(Well::L, Well::L);
inline constexpr std::size_t kLR = basis_index(Well::L, Well::R);
inline constexpr std::size_t kRL = basis_index(Well::R, Well::L);
inline constexpr std::size_t kRR = basis_index(Well::R, Well::R);

/// Tunneling rate of a component holding `n_particles` atoms:
/// eps_lr + g_t1 * (n_particles - 1).
double tunneling_rate(int n_particles, double eps_lr, double g_t1);

/// The 4x4 pseudo-spin Hamiltonian in the (LL, LR, RL, RR) basis:
///
///   | K1  K   K   0  |
///   | K   K2  0   K  |
///   | K   0   K2  K  |
///   | 0   K   K   K1 |
///
/// with K = omega/2, K1 = kappa + (kappa_a + kappa_b)/2, K2 = (kappa_a + kappa_b)/2.
struct EffectiveHamiltonian {
  double k = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double theta_big = 0.0;  // sqrt((K1 - K2)^2 + 16 K^2)
  std::array<std::array<double, 4>, 4> matrix{};

  CMatrix to_cmatrix() const;
};

EffectiveHamiltonian build_effective_hamiltonian(const ModelParams& p);

/// Closed-form spectrum of the effective Hamiltonian, ascending.
///
/// Contains the singlet (0, -1, 1, 0)/sqrt2 at K2, the antisymmetric triplet
/// (1, 0, 0, -1)/sqrt2 at K1, and two states (a, b, b, a) at
/// (K1 + K2 -/+ Theta)/2 whose ratio b/a follows from the eigen-equation.
EigenSystem closed_form_eigensystem(const EffectiveHamiltonian& h);

}  // namespace dwbec
