#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fockweyl/core_index.hpp"
#include "fockweyl/errors.hpp"

namespace fockweyl {

using complexd = std::complex<double>;

/// A point X = (x, xi) of the finite-dimensional phase space R^E x R^E,
/// aligned with the order of a ModeSet.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd xi;

  static PhasePoint zero(int n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  }
  int dim() const { return static_cast<int>(x.size()); }
  double norm_sq() const { return x.squaredNorm() + xi.squaredNorm(); }
};

/// Monic probabilists' Hermite polynomial H_n, orthogonal for N(0,1);
/// H_{n+1}(x) = x H_n(x) - n H_{n-1}(x).
inline double hermite_eval(int n, double x) {
  if (n < 0) throw precondition_error("hermite_eval: n < 0");
  double hm1 = 0.0, h = 1.0;
  for (int k = 0; k < n; ++k) {
    double next = x * h - k * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

/// H_0(x), ..., H_n(x) in one pass.
inline std::vector<double> hermite_eval_all(int n, double x) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int k = 1; k < n; ++k)
    out[static_cast<std::size_t>(k) + 1] =
        x * out[static_cast<std::size_t>(k)] -
        k * out[static_cast<std::size_t>(k) - 1];
  return out;
}

/// Monomial coefficients of H_n: c[k] multiplies x^k (c[n] = 1).
inline std::vector<double> hermite_monomial_coeffs(int n) {
  std::vector<double> hm1{}, h{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(h.size() + 1, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) next[i + 1] += h[i];
    for (std::size_t i = 0; i < hm1.size(); ++i) next[i] -= k * hm1[i];
    hm1 = std::move(h);
    h = std::move(next);
  }
  return h;
}

/// ||H_n||^2 under N(0,1), i.e. n!.  Signals overflow past the representable
/// range; use hermite_log_norm_sq there instead.
inline double hermite_norm_sq(int n) {
  if (n < 0) throw precondition_error("hermite_norm_sq: n < 0");
  if (n > 170)
    throw numeric_error(
        "hermite_norm_sq: n! overflows double, use hermite_log_norm_sq");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline double hermite_log_norm_sq(int n) { return std::lgamma(n + 1.0); }

enum class WeightKind {
  standard,   // e^{-x^2} on R, total mass sqrt(pi)
  config_k,   // per-coordinate law of mu^K: variance h/2, total mass 1
  phase_phi,  // per-coordinate law of mu^Phi: variance h, total mass 1
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  WeightKind kind = WeightKind::standard;

  int order() const { return static_cast<int>(nodes.size()); }
  double total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

/// Gauss-Hermite rule for the weight e^{-x^2}: nodes are the roots of the
/// degree-n physicists' Hermite polynomial (Golub-Welsch on the Jacobi
/// matrix), weights positive, exact for polynomials of degree <= 2n-1.
inline const QuadratureRule& gauss_hermite_rule(int n) {
  if (n < 1) throw precondition_error("gauss_hermite_rule: n < 1");
  if (n > 512) throw precondition_error("gauss_hermite_rule: n > 512");
  static std::vector<std::optional<QuadratureRule>> cache(513);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (slot) return *slot;

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(k / 2.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw numeric_error("gauss_hermite_rule: eigensolve failed");
  QuadratureRule r;
  r.kind = WeightKind::standard;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.weights[static_cast<std::size_t>(i)] = sqrt_pi * v0 * v0;
  }
  slot = std::move(r);
  return *slot;
}

/// Rule for the per-coordinate configuration law (pi h)^{-1/2} e^{-u^2/h} du
/// (variance h/2): substitution u = sqrt(h) t, weights renormalized to mass 1.
inline QuadratureRule mu_k_rule(int n, double h) {
  const QuadratureRule& base = gauss_hermite_rule(n);
  QuadratureRule r;
  r.kind = WeightKind::config_k;
  const double s = std::sqrt(h), inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  r.nodes.reserve(base.nodes.size());
  r.weights.reserve(base.nodes.size());
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(s * base.nodes[static_cast<std::size_t>(i)]);
    r.weights.push_back(inv_sqrt_pi * base.weights[static_cast<std::size_t>(i)]);
  }
  return r;
}

/// Rule for one coordinate of mu^Phi, (2 pi h)^{-1/2} e^{-x^2/(2h)} dx
/// (variance h): substitution x = sqrt(2h) t.
inline QuadratureRule mu_phi_rule(int n, double h) {
  const QuadratureRule& base = gauss_hermite_rule(n);
  QuadratureRule r;
  r.kind = WeightKind::phase_phi;
  const double s = std::sqrt(2.0 * h), inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  r.nodes.reserve(base.nodes.size());
  r.weights.reserve(base.nodes.size());
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(s * base.nodes[static_cast<std::size_t>(i)]);
    r.weights.push_back(inv_sqrt_pi * base.weights[static_cast<std::size_t>(i)]);
  }
  return r;
}

/// Tensor iteration over `dim` copies of a 1-d rule.  `fn` receives the node
/// coordinates and the product weight.
template <class Fn>
void tensor_quadrature(const QuadratureRule& rule, int dim, Fn&& fn) {
  const int n = rule.order();
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> pt(static_cast<std::size_t>(dim), 0.0);
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      pt[static_cast<std::size_t>(d)] =
          rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
    }
    fn(pt, w);
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[static_cast<std::size_t>(d)] < n) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
    if (d == dim) break;
  }
}

struct AdaptiveResult {
  complexd value{0.0, 0.0};
  int order = 0;
  bool converged = false;
};

/// Doubles the quadrature order (up to `max_order`) until two successive
/// evaluations agree to `rtol` relative; the final order is recorded.
template <class Eval>
AdaptiveResult adaptive_order(Eval&& eval_at_order, int base_order = 8,
                              int max_order = 128, double rtol = 1e-10) {
  AdaptiveResult res;
  complexd prev = eval_at_order(base_order);
  int order = base_order;
  while (order * 2 <= max_order) {
    order *= 2;
    complexd cur = eval_at_order(order);
    double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) < rtol * scale) {
      res.value = cur;
      res.order = order;
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.value = prev;
  res.order = order;
  res.converged = false;
  return res;
}

enum class BasisKind {
  p_config,   // P_{alpha,h}(x)       = prod H_{alpha_j}(x_j sqrt(2/h))
  p_phase,    // P_{alpha beta,h}(X)  = prod H_{alpha_j}(x_j/sqrt h) H_{beta_j}(xi_j/sqrt h)
  q_bargmann, // Q_{alpha,h}(X)       = (2h)^{-|alpha|/2} prod (x_j - i xi_j)^{alpha_j}
};

struct BasisFunctionSpec {
  MultiIndex alpha;
  std::optional<MultiIndex> beta;
  double h = 1.0;
  BasisKind kind = BasisKind::p_config;
};

/// Configuration-side evaluation (kind p_config only).
inline complexd basis_eval(const BasisFunctionSpec& spec, const ModeSet& modes,
                           const Eigen::VectorXd& x) {
  if (spec.kind != BasisKind::p_config)
    throw precondition_error("basis_eval: configuration point needs p_config");
  if (spec.beta)
    throw precondition_error("basis_eval: p_config takes no beta");
  if (x.size() != modes.size())
    throw precondition_error("basis_eval: point dimension mismatch");
  const double scale = std::sqrt(2.0 / spec.h);
  double v = 1.0;
  for (const auto& [id, e] : spec.alpha.entries()) {
    int pos = modes.index_of(id);
    if (pos < 0) throw precondition_error("basis_eval: mode not in set");
    v *= hermite_eval(e, scale * x(pos));
  }
  return v;
}

/// Phase-space evaluation (kinds p_phase and q_bargmann).
inline complexd basis_eval(const BasisFunctionSpec& spec, const ModeSet& modes,
                           const PhasePoint& X) {
  if (X.dim() != modes.size())
    throw precondition_error("basis_eval: point dimension mismatch");
  if (spec.kind == BasisKind::p_phase) {
    if (!spec.beta)
      throw precondition_error("basis_eval: p_phase requires beta");
    const double scale = 1.0 / std::sqrt(spec.h);
    double v = 1.0;
    for (const auto& [id, e] : spec.alpha.entries()) {
      int pos = modes.index_of(id);
      if (pos < 0) throw precondition_error("basis_eval: mode not in set");
      v *= hermite_eval(e, scale * X.x(pos));
    }
    for (const auto& [id, e] : spec.beta->entries()) {
      int pos = modes.index_of(id);
      if (pos < 0) throw precondition_error("basis_eval: mode not in set");
      v *= hermite_eval(e, scale * X.xi(pos));
    }
    return v;
  }
  if (spec.kind == BasisKind::q_bargmann) {
    if (spec.beta)
      throw precondition_error("basis_eval: q_bargmann takes no beta");
    complexd v = std::pow(2.0 * spec.h, -0.5 * spec.alpha.total());
    for (const auto& [id, e] : spec.alpha.entries()) {
      int pos = modes.index_of(id);
      if (pos < 0) throw precondition_error("basis_eval: mode not in set");
      complexd z(X.x(pos), -X.xi(pos));
      for (int k = 0; k < e; ++k) v *= z;
    }
    return v;
  }
  throw precondition_error("basis_eval: phase point needs p_phase/q_bargmann");
}

/// Max residual over sample points of
///   (x - i xi)^m - sum_p C(m,p) (-i)^{m-p} H_p(x) H_{m-p}(xi).
inline double hermite_binomial_check(
    int m, const std::vector<std::pair<double, double>>& points) {
  if (m > 12) throw precondition_error("hermite_binomial_check: m > 12");
  std::vector<double> binom(static_cast<std::size_t>(m) + 1);
  binom[0] = 1.0;
  for (int p = 1; p <= m; ++p)
    binom[static_cast<std::size_t>(p)] =
        binom[static_cast<std::size_t>(p - 1)] * (m - p + 1) / p;
  const complexd mi(0.0, -1.0);
  double worst = 0.0;
  for (const auto& [x, xi] : points) {
    complexd lhs = std::pow(complexd(x, -xi), m);
    complexd rhs = 0.0;
    for (int p = 0; p <= m; ++p)
      rhs += binom[static_cast<std::size_t>(p)] * std::pow(mi, m - p) *
             hermite_eval(p, x) * hermite_eval(m - p, xi);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace fockweyl
