#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwbec {

using Complex = std::complex<double>;

/// Thrown when a step of an ODE integrator produces a non-finite value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tolerances used by the eigensolver checks. Tests may loosen or tighten them.
struct Tolerances {
  double hermitian = 1e-12;  // relative to max |H_ij|
  double residual = 1e-10;   // relative to max |H_ij|
};

inline constexpr Tolerances kDefaultTolerances{};

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  /// Builds from nested rows; rows may be ragged (rejected later by consumers).
  static CMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  double max_abs() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> x);

/// Spectral data of a Hermitian matrix. Columns of `vectors` are eigenvectors,
/// ordered to match the ascending `values`.
struct EigenSystem {
  std::vector<double> values;
  CMatrix vectors;

  std::size_t dim() const noexcept { return values.size(); }
  std::vector<Complex> vector(std::size_t i) const;
};

/// Cyclic Jacobi diagonalization with complex rotations.
///
/// Rejects non-square input, and input whose worst entry pair deviates from
/// Hermitian symmetry by more than `tol.hermitian * max|H_ij|`; the error
/// message names that entry.
EigenSystem eigensolve_hermitian(const CMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// max_i ||H v_i - E_i v_i||_2
double max_residual(const CMatrix& h, const EigenSystem& eig);

/// max_ij |<v_i|v_j> - delta_ij|
double orthonormality_error(const EigenSystem& eig);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> a);

/// One classical fourth-order Runge-Kutta step for y' = f(t, y).
///
/// Throws IntegrationError carrying `t` if any stage evaluates non-finite.
template <class F, std::size_t N>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("rk4_step: step size must be positive");

  auto check = [t](const std::array<double, N>& v) {
    for (double x : v) {
      if (!std::isfinite(x))
        throw IntegrationError("rk4_step: non-finite value at t=" + std::to_string(t), t);
    }
  };
  auto axpy = [](const std::array<double, N>& base, double a, const std::array<double, N>& d) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + a * d[i];
    return out;
  };

  const std::array<double, N> k1 = f(t, y);
  check(k1);
  const std::array<double, N> k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  check(k2);
  const std::array<double, N> k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  check(k3);
  const std::array<double, N> k4 = f(t + h, axpy(y, h, k3));
  check(k4);

  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  check(out);
  return out;
}

}  // namespace dwbec
