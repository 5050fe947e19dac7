#include "dwbec/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dwbec {

void ModelParams::validate() const {
  const std::array<std::pair<const char*, double>, 4> fields{
      {{"omega", omega}, {"kappa", kappa}, {"kappa_a", kappa_a}, {"kappa_b", kappa_b}}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value))
      throw std::invalid_argument(std::string("ModelParams: ") + name + " is not finite");
  }
  if (omega < 0.0) throw std::invalid_argument("ModelParams: omega must be >= 0");
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "omega=" << omega << " kappa=" << kappa << " kappa_a=" << kappa_a
     << " kappa_b=" << kappa_b;
  return os.str();
}

double tunneling_rate(int n_particles, double eps_lr, double g_t1) {
  if (n_particles < 1)
    throw std::invalid_argument("tunneling_rate: particle number must be >= 1");
  return eps_lr + g_t1 * static_cast<double>(n_particles - 1);
}

EffectiveHamiltonian build_effective_hamiltonian(const ModelParams& p) {
  p.validate();
  EffectiveHamiltonian h;
  h.k = p.omega / 2;
  h.k1 = p.kappa + p.kappa_a / 2 + p.kappa_b / 2;
  h.k2 = (p.kappa_a + p.kappa_b) / 2;
  h.theta_big = std::hypot(h.k1 - h.k2, 4.0 * h.k);

  const double k = h.k, k1 = h.k1, k2 = h.k2;
  h.matrix = {{{k1, k, k, 0.0}, {k, k2, 0.0, k}, {k, 0.0, k2, k}, {0.0, k, k, k1}}};
  return h;
}

CMatrix EffectiveHamiltonian::to_cmatrix() const {
  CMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = matrix[i][j];
  return m;
}

namespace {

// (a, b) with H (a, b, b, a) = e (a, b, b, a). Both rows of the reduced
// problem give a valid direction; take the better-conditioned one.
std::array<double, 2> symmetric_block_vector(const EffectiveHamiltonian& h, double e,
                                             bool upper) {
  const std::array<double, 2> from_row2{e - h.k2, 2.0 * h.k};
  const std::array<double, 2> from_row1{2.0 * h.k, e - h.k1};
  const double n2 = std::hypot(from_row2[0], from_row2[1]);
  const double n1 = std::hypot(from_row1[0], from_row1[1]);
  if (n1 == 0.0 && n2 == 0.0) {
    // K = 0 and K1 = K2: the block is scalar, any orthonormal pair works.
    return upper ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
  }
  const auto& v = n2 >= n1 ? from_row2 : from_row1;
  const double n = std::max(n1, n2);
  return {v[0] / n, v[1] / n};
}

}  // namespace

EigenSystem closed_form_eigensystem(const EffectiveHamiltonian& h) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  struct Pair {
    double e;
    std::array<double, 4> v;
  };
  std::array<Pair, 4> pairs;

  pairs[0] = {h.k2, {0.0, -inv_sqrt2, inv_sqrt2, 0.0}};

  const double e_hi = (h.k2 + h.k1 + h.theta_big) / 2;
  const double e_lo = (h.k2 + h.k1 - h.theta_big) / 2;
  for (int s = 0; s < 2; ++s) {
    const double e = s == 0 ? e_hi : e_lo;
    const auto ab = symmetric_block_vector(h, e, s == 0);
    // Normalization of (a, b, b, a): xi = 1 / sqrt(2 a^2 + 2 b^2).
    const double xi = 1.0 / std::sqrt(2.0 * (ab[0] * ab[0] + ab[1] * ab[1]));
    double a = xi * ab[0];
    double b = xi * ab[1];
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
      a = -a;
      b = -b;
    }
    pairs[1 + s] = {e, {a, b, b, a}};
  }

  pairs[3] = {h.k1, {inv_sqrt2, 0.0, 0.0, -inv_sqrt2}};

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pairs[i].e < pairs[j].e; });

  EigenSystem out;
  out.values.resize(4);
  out.vectors = CMatrix(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    out.values[c] = pairs[order[c]].e;
    for (std::size_t r = 0; r < 4; ++r) out.vectors(r, c) = pairs[order[c]].v[r];
  }
  return out;
}

}  // namespace dwbec
