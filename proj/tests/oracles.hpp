#pragma once

// Test-only oracles, independent of the library paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace oracles {

using complexd = std::complex<double>;

// Brute-force enumeration count of multi-indices over n modes with the given
// caps (independent of the library's odometer).
inline int count_multiindices(int n_modes, int per_mode, int total) {
  std::vector<int> e(static_cast<std::size_t>(n_modes), 0);
  int count = 0;
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n_modes) {
      ++count;
      return;
    }
    for (int v = 0; v <= per_mode && used + v <= total; ++v) rec(pos + 1, used + v);
  };
  rec(0, 0);
  return count;
}

// Gram-Schmidt on {1, x, x^2, ...} against N(0,1) using exact moments; returns
// the monic orthogonal polynomial values at x.
inline double gram_schmidt_hermite(int n, double x) {
  // Moments of N(0,1): m_k = (k-1)!! for even k, 0 for odd.
  auto moment = [](int k) -> double {
    if (k % 2 == 1) return 0.0;
    double v = 1.0;
    for (int j = k - 1; j > 1; j -= 2) v *= j;
    return v;
  };
  // Represent polynomials by monomial coefficients.
  std::vector<std::vector<double>> basis;
  for (int d = 0; d <= n; ++d) {
    std::vector<double> p(static_cast<std::size_t>(d) + 1, 0.0);
    p[static_cast<std::size_t>(d)] = 1.0;
    for (int j = 0; j < d; ++j) {
      // <x^d, b_j> / <b_j, b_j>
      double num = 0.0, den = 0.0;
      const auto& bj = basis[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < bj.size(); ++k)
        num += bj[k] * moment(d + static_cast<int>(k));
      for (std::size_t k = 0; k < bj.size(); ++k)
        for (std::size_t l = 0; l < bj.size(); ++l)
          den += bj[k] * bj[l] * moment(static_cast<int>(k + l));
      double c = num / den;
      for (std::size_t k = 0; k < bj.size(); ++k) p[k] -= c * bj[k];
    }
    basis.push_back(p);
  }
  double v = 0.0, xp = 1.0;
  for (std::size_t k = 0; k < basis[static_cast<std::size_t>(n)].size(); ++k) {
    v += basis[static_cast<std::size_t>(n)][k] * xp;
    xp *= x;
  }
  return v;
}

// Largest singular value by dense SVD (library oracle for power iteration).
inline double svd_norm(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

// Displacement-operator matrix element <m| e^{gamma a* - conj(gamma) a} |n>
// via the associated-Laguerre closed form; oracle for translation matrices.
inline complexd displacement_element(int m, int n, complexd gamma) {
  if (m < n) {
    // <m|D(gamma)|n> = conj(<n|D(-gamma)|m>)
    return std::conj(displacement_element(n, m, -gamma));
  }
  const double g2 = std::norm(gamma);
  // L_n^{(m-n)}(g2)
  const int a = m - n;
  double lkm1 = 0.0, lk = 1.0;  // L_0 = 1
  for (int k = 0; k < n; ++k) {
    double next = ((2.0 * k + 1.0 + a - g2) * lk - (k + a) * lkm1) / (k + 1.0);
    lkm1 = lk;
    lk = next;
  }
  double lognm = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
  complexd v = std::exp(lognm) * std::pow(gamma, m - n) * std::exp(-0.5 * g2);
  return v * lk;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    double fa = static_cast<double>(i) / a.size();
    double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// Composite Simpson on [lo, hi].
template <class F>
double simpson(F&& f, double lo, double hi, int intervals) {
  if (intervals % 2) ++intervals;
  double h = (hi - lo) / intervals;
  double s = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i)
    s += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracles
