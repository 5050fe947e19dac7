#pragma once

#include <vector>

#include "dwbec/core_model.hpp"
#include "dwbec/numerics.hpp"

namespace dwbec {

/// Normalized amplitude vector over a finite basis.
class QuantumState {
 public:
  QuantumState() = default;
  /// Throws std::invalid_argument if the amplitudes are empty or not normalized within `tol`.
  explicit QuantumState(std::vector<Complex> amplitudes, double tol = 1e-12);

  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<Complex> amps_;
};

/// |LR>: component A in the left well, component B in the right well.
QuantumState initial_state_LR();

/// exp(-iHt) assembled from the spectral data of a time-independent H.
class Propagator {
 public:
  explicit Propagator(EigenSystem eig);

  std::size_t dim() const noexcept { return eig_.dim(); }
  const EigenSystem& eigensystem() const noexcept { return eig_; }

  /// <phi_i|s0> for every eigenvector.
  std::vector<Complex> spectral_coefficients(const QuantumState& s0) const;

  /// sum_i exp(-i E_i t) c_i phi_i, with c from spectral_coefficients().
  std::vector<Complex> evolve_coefficients(const std::vector<Complex>& coeffs, double t) const;

 private:
  EigenSystem eig_;
};

/// Throws DimensionError when the state and propagator dimensions differ.
QuantumState evolve(const Propagator& prop, const QuantumState& s0, double t);

/// <S_z> of one component in the 4-dim (LL, LR, RL, RR) space.
double expectation_sz(const QuantumState& s, Component c);

/// <s|H|s>
double expectation(const CMatrix& h, const QuantumState& s);

}  // namespace dwbec
