#include "dwbec/quantum_dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dwbec {

QuantumState::QuantumState(std::vector<Complex> amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("QuantumState: empty amplitude vector");
  double n2 = 0.0;
  for (const auto& z : amps_) n2 += std::norm(z);
  if (!(std::abs(n2 - 1.0) <= tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "QuantumState: squared norm " << n2 << " differs from 1 by more than " << tol;
    throw std::invalid_argument(os.str());
  }
}

QuantumState initial_state_LR() {
  std::vector<Complex> a(4);
  a[kLR] = 1.0;
  return QuantumState(std::move(a));
}

Propagator::Propagator(EigenSystem eig) : eig_(std::move(eig)) {
  if (eig_.vectors.rows() != eig_.dim() || eig_.vectors.cols() != eig_.dim())
    throw DimensionError("Propagator: eigenvector matrix does not match eigenvalue count");
}

std::vector<Complex> Propagator::spectral_coefficients(const QuantumState& s0) const {
  if (s0.dim() != dim()) {
    std::ostringstream os;
    os << "Propagator: state dimension " << s0.dim() << " != propagator dimension " << dim();
    throw DimensionError(os.str());
  }
  const std::size_t n = dim();
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t r = 0; r < n; ++r) acc += std::conj(eig_.vectors(r, i)) * s0[r];
    c[i] = acc;
  }
  return c;
}

std::vector<Complex> Propagator::evolve_coefficients(const std::vector<Complex>& coeffs,
                                                     double t) const {
  const std::size_t n = dim();
  if (coeffs.size() != n) throw DimensionError("Propagator: coefficient count mismatch");
  std::vector<Complex> phased(n);
  for (std::size_t i = 0; i < n; ++i)
    phased[i] = std::polar(1.0, -eig_.values[i] * t) * coeffs[i];
  std::vector<Complex> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) acc += eig_.vectors(r, i) * phased[i];
    out[r] = acc;
  }
  return out;
}

QuantumState evolve(const Propagator& prop, const QuantumState& s0, double t) {
  const auto c = prop.spectral_coefficients(s0);
  return QuantumState(prop.evolve_coefficients(c, t), 1e-10);
}

double expectation_sz(const QuantumState& s, Component c) {
  if (s.dim() != 4) {
    std::ostringstream os;
    os << "expectation_sz: expected a 4-dim pseudo-spin state, got dimension " << s.dim();
    throw DimensionError(os.str());
  }
  const double p_ll = std::norm(s[kLL]), p_lr = std::norm(s[kLR]);
  const double p_rl = std::norm(s[kRL]), p_rr = std::norm(s[kRR]);
  if (c == Component::A) return 0.5 * ((p_ll + p_lr) - (p_rl + p_rr));
  return 0.5 * ((p_ll + p_rl) - (p_lr + p_rr));
}

double expectation(const CMatrix& h, const QuantumState& s) {
  const auto hs = h * std::span<const Complex>(s.amplitudes());
  return inner(s.amplitudes(), hs).real();
}

}  // namespace dwbec
