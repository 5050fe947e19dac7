#include "dwbec/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace dwbec {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      std::ostringstream os;
      os << "ragged matrix rows: expected " << c << " columns, got " << row.size();
      throw DimensionError(os.str());
    }
  }
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference: shapes differ");
  CMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: dimensions differ");
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<Complex> EigenSystem::vector(std::size_t i) const {
  std::vector<Complex> v(vectors.rows());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, i);
  return v;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner product: dimensions differ");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

namespace {

void check_hermitian(const CMatrix& h, const Tolerances& tol) {
  if (!h.square()) {
    std::ostringstream os;
    os << "eigensolve_hermitian: matrix is not square (" << h.rows() << "x" << h.cols() << ")";
    throw DimensionError(os.str());
  }
  const double scale = std::max(h.max_abs(), 1.0);
  double worst = -1.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) {
      const double dev = std::abs(h(i, j) - std::conj(h(j, i)));
      if (!std::isfinite(dev) || dev > worst) {
        worst = std::isfinite(dev) ? dev : std::numeric_limits<double>::infinity();
        wi = i;
        wj = j;
        if (!std::isfinite(dev)) break;
      }
    }
  if (worst > tol.hermitian * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "eigensolve_hermitian: matrix is not Hermitian; worst entry (" << wi << "," << wj
       << ") = " << h(wi, wj) << " vs conj of (" << wj << "," << wi << ") = " << h(wj, wi)
       << ", deviation " << worst;
    throw std::invalid_argument(os.str());
  }
}

double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

EigenSystem eigensolve_hermitian(const CMatrix& h, const Tolerances& tol) {
  check_hermitian(h, tol);
  const std::size_t n = h.rows();

  CMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  CMatrix v = CMatrix::identity(n);

  double total = 0.0;
  for (const auto& z : a.data()) total += std::norm(z);
  const double stop = 1e-32 * std::max(total, 1e-300);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm2(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double g = std::abs(b);
        if (g == 0.0) continue;
        const Complex phase = b / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        const double theta = (aqq - app) / (2.0 * g);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(k, p);
          const Complex y = a(k, q);
          a(k, p) = x * upp + y * uqp;
          a(k, q) = x * upq + y * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(p, k);
          const Complex y = a(q, k);
          a(p, k) = std::conj(upp) * x + std::conj(uqp) * y;
          a(q, k) = std::conj(upq) * x + std::conj(uqq) * y;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = v(k, p);
          const Complex y = v(k, q);
          v(k, p) = x * upp + y * uqp;
          v(k, q) = x * upq + y * uqq;
        }
      }
    }
  }
  if (off_diagonal_norm2(a) > stop) {
    // Jacobi converges quadratically; reaching here means the input was pathological.
    const double rel = std::sqrt(off_diagonal_norm2(a) / std::max(total, 1e-300));
    if (rel > 1e-14)
      throw std::runtime_error("eigensolve_hermitian: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

double max_residual(const CMatrix& h, const EigenSystem& eig) {
  double worst = 0.0;
  for (std::size_t i = 0; i < eig.dim(); ++i) {
    const auto vi = eig.vector(i);
    auto hv = h * std::span<const Complex>(vi);
    for (std::size_t r = 0; r < hv.size(); ++r) hv[r] -= eig.values[i] * vi[r];
    worst = std::max(worst, norm(hv));
  }
  return worst;
}

double orthonormality_error(const EigenSystem& eig) {
  double worst = 0.0;
  const std::size_t n = eig.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto vi = eig.vector(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto vj = eig.vector(j);
      const Complex ip = inner(vi, vj);
      worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace dwbec
