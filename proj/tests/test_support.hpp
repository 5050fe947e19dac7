#pragma once

// Test-only helpers: random inputs and independent reference computations.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dwbec/numerics.hpp"

namespace dwbec::testing {

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

inline std::vector<Complex> random_unit_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  const double nv = norm(v);
  for (auto& z : v) z /= nv;
  return v;
}

/// Projectors onto eigenspaces, clustering eigenvalues closer than `tol`.
/// Returns (cluster mean energy, projector) pairs in ascending order.
inline std::vector<std::pair<double, CMatrix>> eigenspace_projectors(const EigenSystem& eig,
                                                                     double tol = 1e-5) {
  std::vector<std::pair<double, CMatrix>> out;
  const std::size_t n = eig.dim();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] <= tol) ++end;
    CMatrix p(n, n);
    double e = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      e += eig.values[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          p(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    out.emplace_back(e / static_cast<double>(end - start), std::move(p));
    start = end;
  }
  return out;
}

/// Coefficients c[0..n] of det(lambda I - A) = sum_k c[k] lambda^k for a real
/// symmetric matrix, via Faddeev-LeVerrier.
inline std::vector<double> characteristic_polynomial(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s + (i == j ? c[n - k + 1] : 0.0);
      }
    m = next;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

/// Real roots of p in [lo, hi] located by scanning for sign changes and bisecting.
inline std::vector<double> bracketed_roots(const std::vector<double>& c, double lo, double hi,
                                           std::size_t scan = 200000) {
  std::vector<double> roots;
  double x0 = lo, f0 = poly_eval(c, lo);
  for (std::size_t i = 1; i <= scan; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan);
    const double f1 = poly_eval(c, x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = poly_eval(c, m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace dwbec::testing
