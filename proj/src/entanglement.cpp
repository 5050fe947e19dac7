#include "dwbec/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dwbec {

namespace {

constexpr double kDensityTol = 1e-12;
constexpr double kPsdFloor = 1e-10;
constexpr double kClamp = 1e-10;

CMatrix sqrt_psd(const CMatrix& m) {
  const auto eig = eigensolve_hermitian(m);
  const std::size_t n = m.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() != 4 || rho_.cols() != 4) {
    std::ostringstream os;
    os << "DensityMatrix: expected 4x4, got " << rho_.rows() << "x" << rho_.cols();
    throw DimensionError(os.str());
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!(std::abs(rho_(i, j) - std::conj(rho_(j, i))) <= kDensityTol)) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian at entry (" << i << "," << j << ")";
        throw std::invalid_argument(os.str());
      }
  Complex tr{};
  for (std::size_t i = 0; i < 4; ++i) tr += rho_(i, i);
  if (!(std::abs(tr - 1.0) <= kDensityTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  const auto eig = eigensolve_hermitian(rho_);
  if (eig.values.front() < -kPsdFloor) {
    std::ostringstream os;
    os << "DensityMatrix: not positive semidefinite (eigenvalue " << eig.values.front() << ")";
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const QuantumState& s) {
  if (s.dim() != 4) throw DimensionError("DensityMatrix::from_pure: state must be 4-dim");
  CMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = s[i] * std::conj(s[j]);
  return DensityMatrix(std::move(m));
}

double concurrence_mixed(const DensityMatrix& d) {
  const CMatrix& rho = d.entries();

  // sy x sy is real and antidiagonal with signs (-1, 1, 1, -1).
  CMatrix flip(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  CMatrix rho_conj(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho_conj(i, j) = std::conj(rho(i, j));
  const CMatrix rho_tilde = flip * rho_conj * flip;

  // rho * rho_tilde shares its spectrum with the Hermitian sqrt(rho) rho_tilde sqrt(rho).
  const CMatrix root = sqrt_psd(rho);
  CMatrix r = root * rho_tilde * root;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }
  for (std::size_t i = 0; i < 4; ++i) r(i, i) = r(i, i).real();

  const auto eig = eigensolve_hermitian(r);
  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double e = eig.values[i];
    lambda[i] = std::sqrt(e < kClamp ? 0.0 : e);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double concurrence_pure(const QuantumState& s) {
  if (s.dim() != 4) {
    std::ostringstream os;
    os << "concurrence_pure: expected 4-dim state, got " << s.dim();
    throw DimensionError(os.str());
  }
  const double c = 2.0 * std::abs(s[kLL] * s[kRR] - s[kLR] * s[kRL]);
  return std::min(c, 1.0);
}

ConcurrenceEvaluator::ConcurrenceEvaluator(const ModelParams& p)
    : prop_(closed_form_eigensystem(build_effective_hamiltonian(p))),
      coeffs_(prop_.spectral_coefficients(initial_state_LR())) {}

QuantumState ConcurrenceEvaluator::state(double t) const {
  return QuantumState(prop_.evolve_coefficients(coeffs_, t), 1e-10);
}

double ConcurrenceEvaluator::operator()(double t) const {
  const auto a = prop_.evolve_coefficients(coeffs_, t);
  return std::min(2.0 * std::abs(a[kLL] * a[kRR] - a[kLR] * a[kRL]), 1.0);
}

std::vector<ConcurrencePoint> concurrence_trace(const ModelParams& p,
                                                const std::vector<double>& t_grid) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw std::invalid_argument("concurrence_trace: time grid must be ascending");
  const ConcurrenceEvaluator eval(p);
  std::vector<ConcurrencePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back({t, eval(t)});
  return out;
}

double peak_time_formula(const ModelParams& p, int k) {
  if (!(p.omega > 0.0)) throw std::invalid_argument("peak_time_formula: omega must be > 0");
  if (!(p.kappa > 0.0)) throw std::invalid_argument("peak_time_formula: kappa must be > 0");
  if (k < 0) throw std::invalid_argument("peak_time_formula: k must be >= 0");
  constexpr double pi = std::numbers::pi;
  return 2.0 * p.kappa / (p.omega * p.omega) * (pi / 4 + k * pi / 2);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > rel_tol * std::max(std::abs(0.5 * (a + b)), 1e-300)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

namespace {

double bisect_crossing(const std::function<double(double)>& f, double inside, double outside,
                       double level, double tol) {
  while (std::abs(outside - inside) > tol) {
    const double mid = 0.5 * (inside + outside);
    if (f(mid) >= level)
      inside = mid;
    else
      outside = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

double level_crossing_width(const std::function<double(double)>& f, double t_peak, double level,
                            double step, double t_lo, double t_hi, double tol) {
  if (!(step > 0.0)) throw std::invalid_argument("level_crossing_width: step must be > 0");
  auto edge = [&](double dir) {
    double inside = t_peak;
    for (;;) {
      double next = inside + dir * step;
      if (dir > 0 ? next >= t_hi : next <= t_lo) {
        next = dir > 0 ? t_hi : t_lo;
        if (f(next) >= level)
          throw std::runtime_error("level_crossing_width: peak lobe extends past the scan window");
        return bisect_crossing(f, inside, next, level, tol);
      }
      if (f(next) < level) return bisect_crossing(f, inside, next, level, tol);
      inside = next;
    }
  };
  return edge(+1.0) - edge(-1.0);
}

std::vector<PeakReport> find_peaks(const std::function<double(double)>& c, double t_max,
                                   int n_peaks, double grid_dt, double refine_dt) {
  if (refine_dt <= 0.0) refine_dt = grid_dt / 20.0;
  if (!(grid_dt > 0.0)) throw std::invalid_argument("find_peaks: grid spacing must be > 0");
  if (!(t_max > grid_dt)) throw std::invalid_argument("find_peaks: t_max too small");
  if (n_peaks < 1) throw std::invalid_argument("find_peaks: n_peaks must be >= 1");

  const auto n = static_cast<std::size_t>(std::floor(t_max / grid_dt)) + 1;
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = c(static_cast<double>(i) * grid_dt);

  std::vector<PeakReport> out;
  std::size_t i = 0;
  while (i < n && static_cast<int>(out.size()) < n_peaks) {
    if (vals[i] < kWeakEntanglement) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < n && vals[i] >= kWeakEntanglement) ++i;
    if (i == n) break;  // lobe runs past t_max
    const std::size_t end = i;  // first sample back below threshold

    std::size_t j = start;
    for (std::size_t m = start; m < end; ++m)
      if (vals[m] > vals[j]) j = m;

    const double tj = static_cast<double>(j) * grid_dt;
    // Fine scan of the whole lobe so fast ripple cannot trap the search.
    const double lo = start > 0 ? static_cast<double>(start - 1) * grid_dt : 0.0;
    const double hi = static_cast<double>(end) * grid_dt;
    const auto fine = static_cast<std::size_t>(std::ceil((hi - lo) / refine_dt));
    double t_fine = tj, c_fine = vals[j];
    for (std::size_t m = 0; m <= fine; ++m) {
      const double t = std::min(hi, lo + static_cast<double>(m) * refine_dt);
      const double v = c(t);
      if (v > c_fine) {
        c_fine = v;
        t_fine = t;
      }
    }
    double t_star = golden_section_max(c, std::max(lo, t_fine - refine_dt),
                                       std::min(hi, t_fine + refine_dt));
    double c_star = c(t_star);
    if (c_fine > c_star) {
      t_star = t_fine;
      c_star = c_fine;
    }

    PeakReport r;
    r.k_index = static_cast<int>(out.size());
    r.t_peak_numeric = t_star;
    r.c_peak = c_star;
    r.tau_half_width = level_crossing_width(c, t_star, c_star / std::sqrt(2.0), grid_dt / 20.0,
                                            lo, hi);
    out.push_back(r);
  }
  return out;
}

std::vector<PeakReport> find_peaks(const ModelParams& p, double t_max, int n_peaks) {
  p.validate();
  if (!(p.omega > 0.0)) throw std::invalid_argument("find_peaks: omega must be > 0");
  if (!(p.kappa > 0.0)) throw std::invalid_argument("find_peaks: kappa must be > 0");
  const ConcurrenceEvaluator eval(p);
  const double grid_dt = 0.05 * p.kappa / (p.omega * p.omega);
  const auto h = build_effective_hamiltonian(p);
  const double spread = std::abs(h.k1 - h.k2) + h.theta_big + 1e-300;
  const double refine_dt = std::min(grid_dt / 20.0, 0.05 * 2.0 * std::numbers::pi / spread);
  auto reports =
      find_peaks([&eval](double t) { return eval(t); }, t_max, n_peaks, grid_dt, refine_dt);
  for (auto& r : reports) r.t_peak_formula = peak_time_formula(p, r.k_index);
  return reports;
}

}  // namespace dwbec
