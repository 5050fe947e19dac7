#include "dwbec/fock_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dwbec {

FockBasis::FockBasis(int n_a_total, int n_b_total) : na_(n_a_total), nb_(n_b_total) {
  if (na_ < 1 || nb_ < 1)
    throw std::invalid_argument("FockBasis: particle numbers must be >= 1");
}

std::size_t FockBasis::index(int n_al, int n_bl) const {
  if (n_al < 0 || n_al > na_ || n_bl < 0 || n_bl > nb_)
    throw std::out_of_range("FockBasis::index: occupation outside basis");
  return static_cast<std::size_t>(n_al) * static_cast<std::size_t>(nb_ + 1) +
         static_cast<std::size_t>(n_bl);
}

std::pair<int, int> FockBasis::occupation(std::size_t i) const {
  const auto stride = static_cast<std::size_t>(nb_ + 1);
  return {static_cast<int>(i / stride), static_cast<int>(i % stride)};
}

std::size_t FockBasis::mirror(std::size_t i) const {
  const auto [al, bl] = occupation(i);
  return index(na_ - al, nb_ - bl);
}

FockHamiltonian build_fock_hamiltonian(const ModelParams& p, int n_a, int n_b,
                                       std::size_t dim_cap) {
  p.validate();
  FockBasis basis(n_a, n_b);
  const std::size_t dim = basis.dim();
  if (dim > dim_cap) {
    std::ostringstream os;
    os << "build_fock_hamiltonian: dimension " << dim << " exceeds cap " << dim_cap;
    throw std::invalid_argument(os.str());
  }

  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto [al, bl] = basis.occupation(i);
    const int ar = n_a - al;
    const int br = n_b - bl;
    const double inter = static_cast<double>(al * bl + ar * br);
    const double self_a = static_cast<double>(al * al + ar * ar);
    const double self_b = static_cast<double>(bl * bl + br * br);
    m(i, i) = p.kappa * inter + p.kappa_a / 2 * self_a + p.kappa_b / 2 * self_b;

    // a_L^+ a_R moves one A atom right-to-left; its adjoint is the transpose.
    if (al < n_a) {
      const std::size_t j = basis.index(al + 1, bl);
      const double amp = p.omega / 2 * std::sqrt(static_cast<double>((al + 1) * (n_a - al)));
      m(i, j) = amp;
      m(j, i) = amp;
    }
    if (bl < n_b) {
      const std::size_t j = basis.index(al, bl + 1);
      const double amp = p.omega / 2 * std::sqrt(static_cast<double>((bl + 1) * (n_b - bl)));
      m(i, j) = amp;
      m(j, i) = amp;
    }
  }
  return {basis, std::move(m)};
}

double pod_expectation(const FockHamiltonian& h, const QuantumState& s, Component c) {
  if (s.dim() != h.basis.dim()) {
    std::ostringstream os;
    os << "pod_expectation: state dimension " << s.dim() << " != basis dimension "
       << h.basis.dim();
    throw DimensionError(os.str());
  }
  const int total = c == Component::A ? h.basis.n_a_total() : h.basis.n_b_total();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto [al, bl] = h.basis.occupation(i);
    const int nl = c == Component::A ? al : bl;
    acc += std::norm(s[i]) * static_cast<double>(2 * nl - total);
  }
  return acc;
}

QuantumState fock_initial_state(const FockBasis& basis) {
  std::vector<Complex> a(basis.dim());
  a[basis.index(basis.n_a_total(), 0)] = 1.0;
  return QuantumState(std::move(a));
}

std::size_t effective_index_of_fock(std::size_t fock_index) {
  // (1,1)->LL, (1,0)->LR, (0,1)->RL, (0,0)->RR
  if (fock_index > 3) throw std::out_of_range("effective_index_of_fock: N=1 basis has 4 states");
  return 3 - fock_index;
}

std::vector<PodSample> evolve_pod(const FockHamiltonian& h, const QuantumState& s0,
                                  const std::vector<double>& t_grid) {
  const Propagator prop(eigensolve_hermitian(h.matrix));
  const auto coeffs = prop.spectral_coefficients(s0);
  std::vector<PodSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const QuantumState s(prop.evolve_coefficients(coeffs, t), 1e-10);
    out.push_back({t, pod_expectation(h, s, Component::A), pod_expectation(h, s, Component::B)});
  }
  return out;
}

std::vector<PodSample> oracle_evolve_pod(const ModelParams& p, int n_a, int n_b,
                                         const std::vector<double>& t_grid) {
  const auto h = build_fock_hamiltonian(p, n_a, n_b);
  return evolve_pod(h, fock_initial_state(h.basis), t_grid);
}

double diagonal_ensemble_pod(const FockHamiltonian& h, const QuantumState& s0, Component c,
                             double degeneracy_tol) {
  const auto eig = eigensolve_hermitian(h.matrix);
  const Propagator prop(eig);
  const auto coeffs = prop.spectral_coefficients(s0);
  const std::size_t n = eig.dim();
  const int total = c == Component::A ? h.basis.n_a_total() : h.basis.n_b_total();

  double acc = 0.0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] <= degeneracy_tol) ++end;
    for (std::size_t r = 0; r < n; ++r) {
      Complex proj{};
      for (std::size_t k = start; k < end; ++k) proj += coeffs[k] * eig.vectors(r, k);
      const auto [al, bl] = h.basis.occupation(r);
      const int nl = c == Component::A ? al : bl;
      acc += std::norm(proj) * static_cast<double>(2 * nl - total);
    }
    start = end;
  }
  return acc;
}

PodStatistics pod_statistics(const std::vector<PodSample>& trace) {
  PodStatistics st;
  if (trace.empty()) return st;
  const double n = static_cast<double>(trace.size());
  for (const auto& s : trace) {
    st.mean_a += s.pod_a;
    st.mean_b += s.pod_b;
  }
  st.mean_a /= n;
  st.mean_b /= n;
  for (const auto& s : trace) {
    st.var_a += (s.pod_a - st.mean_a) * (s.pod_a - st.mean_a);
    st.var_b += (s.pod_b - st.mean_b) * (s.pod_b - st.mean_b);
  }
  st.var_a /= n;
  st.var_b /= n;
  return st;
}

}  // namespace dwbec
