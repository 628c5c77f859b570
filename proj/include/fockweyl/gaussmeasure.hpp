#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fockweyl/core_index.hpp"
#include "fockweyl/errors.hpp"
#include "fockweyl/hermite.hpp"
#include "fockweyl/rng.hpp"

namespace fockweyl {

// ---------------------------------------------------------------------------
// Weight sequences b_j and the summability diagnostic.

struct PowerLawWeights {
  double gamma = 1.0;  // b_j = (1 + |j|)^gamma
  int lattice_dim = 1;
};

struct ExplicitWeights {
  std::vector<double> values;
};

/// Sequence of positive weights attached to an enumeration of the mode set.
/// Power-law weights live on Z^d enumerated by increasing sup-norm.
struct WeightSequence {
  std::variant<PowerLawWeights, ExplicitWeights> rule;

  /// |j| values for the first `count` lattice sites of Z^d sorted by sup-norm
  /// (ties by lexicographic order of coordinates).
  static std::vector<double> lattice_norms(int d, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int radius = 0; static_cast<int>(out.size()) < count; ++radius) {
      std::vector<std::vector<int>> shell;
      std::vector<int> pt(static_cast<std::size_t>(d), -radius);
      while (true) {
        int sup = 0;
        for (int c : pt) sup = std::max(sup, std::abs(c));
        if (sup == radius) shell.push_back(pt);
        int k = 0;
        for (; k < d; ++k) {
          if (++pt[static_cast<std::size_t>(k)] <= radius) break;
          pt[static_cast<std::size_t>(k)] = -radius;
        }
        if (k == d) break;
      }
      std::sort(shell.begin(), shell.end());
      for (const auto& p : shell) {
        out.push_back(static_cast<double>(radius));
        if (static_cast<int>(out.size()) == count) break;
        (void)p;
      }
    }
    return out;
  }

  std::vector<double> values(int count) const {
    std::vector<double> out;
    if (const auto* pl = std::get_if<PowerLawWeights>(&rule)) {
      if (pl->gamma <= 0.0)
        throw precondition_error("WeightSequence: gamma must be positive");
      auto norms = lattice_norms(pl->lattice_dim, count);
      out.reserve(norms.size());
      for (double nj : norms) out.push_back(std::pow(1.0 + nj, pl->gamma));
    } else {
      const auto& v = std::get<ExplicitWeights>(rule).values;
      if (static_cast<int>(v.size()) < count)
        throw precondition_error("WeightSequence: horizon beyond explicit list");
      out.assign(v.begin(), v.begin() + count);
    }
    for (double b : out)
      if (!(b > 0.0)) throw precondition_error("WeightSequence: b_j <= 0");
    return out;
  }
};

/// R_j(b_j, eps) = int_{eps b_j}^inf e^{-x^2/2} dx, evaluated via erfc.
inline double gaussian_tail(double threshold) {
  return std::sqrt(M_PI / 2.0) * std::erfc(threshold / std::sqrt(2.0));
}

struct SummabilityReport {
  std::vector<double> terms;         // R_j per mode
  std::vector<double> partial_sums;  // running sums
  std::vector<double> proof_bounds;  // sqrt(2) e^{-eps^2 b_j^2 / 4} on 2 R_j / sqrt(2 pi)
  bool summable_heuristic = false;   // advisory ratio test, never a proof
  double tail_ratio = 0.0;
};

/// Partial sums of the tail family R_j plus an advisory ratio-test verdict.
inline SummabilityReport tail_summability_report(const WeightSequence& w,
                                                 double eps, int horizon) {
  if (!(eps > 0.0)) throw precondition_error("tail_summability: eps <= 0");
  if (horizon < 1) throw precondition_error("tail_summability: horizon < 1");
  SummabilityReport rep;
  auto b = w.values(horizon);
  double sum = 0.0;
  rep.terms.reserve(b.size());
  for (double bj : b) {
    double t = gaussian_tail(eps * bj);
    rep.terms.push_back(t);
    sum += t;
    rep.partial_sums.push_back(sum);
    rep.proof_bounds.push_back(std::sqrt(2.0) *
                               std::exp(-eps * eps * bj * bj / 4.0));
  }
  // Advisory ratio test on shell sums (runs of equal b_j, so lattice
  // multiplicities do not masquerade as stagnation).
  std::vector<double> shells;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (j > 0 && b[j] == b[j - 1])
      shells.back() += rep.terms[j];
    else
      shells.push_back(rep.terms[j]);
  }
  double worst = 1.0;
  if (shells.size() >= 2) {
    worst = 0.0;
    std::size_t start = shells.size() - std::max<std::size_t>(1, shells.size() / 4);
    for (std::size_t s = std::max<std::size_t>(1, start); s < shells.size(); ++s)
      worst = std::max(worst, shells[s] / shells[s - 1]);
  }
  rep.tail_ratio = worst;
  rep.summable_heuristic = worst < 1.0 - 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Gaussian measures on the finite-dimensional marginals.

enum class MeasureKind {
  config_k,  // density (pi h)^{-|E|/2} e^{-|u|^2/h}: per-coordinate variance h/2
  phase_phi, // density (2 pi h)^{-|E|} e^{-|X|^2/(2h)}: per-coordinate variance h
};

struct GaussianMeasureSpec {
  ModeSet modes;
  double h = 1.0;
  MeasureKind kind = MeasureKind::config_k;

  int dim() const {
    return kind == MeasureKind::config_k ? modes.size() : 2 * modes.size();
  }
  double coordinate_variance() const {
    if (!(h > 0.0)) throw precondition_error("GaussianMeasureSpec: h <= 0");
    return kind == MeasureKind::config_k ? h / 2.0 : h;
  }
};

/// n i.i.d. samples, one per row; columns follow the mode order (for the
/// phase measure: the |E| x-coordinates first, then the |E| xi-coordinates).
inline Eigen::MatrixXd sample(const GaussianMeasureSpec& spec, RngStream rng,
                              int n) {
  if (n < 1) throw precondition_error("sample: n < 1");
  const double sd = std::sqrt(spec.coordinate_variance());
  Eigen::MatrixXd out(n, spec.dim());
  Philox gen(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < spec.dim(); ++j) out(i, j) = sd * gen.next_normal();
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian functionals l_a and E_a = exp(l_a).

inline complexd ell_a(const Eigen::VectorXcd& a, const Eigen::VectorXd& x) {
  if (a.size() != x.size())
    throw precondition_error("ell_a: dimension mismatch");
  complexd s = 0.0;
  for (int j = 0; j < a.size(); ++j) s += a(j) * x(j);
  return s;
}

inline complexd exp_ell(const Eigen::VectorXcd& a, const Eigen::VectorXd& x) {
  return std::exp(ell_a(a, x));
}

// ---------------------------------------------------------------------------
// Monte Carlo integration.

struct McResult {
  complexd mean{0.0, 0.0};
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Sample mean and standard error of f against the measure; deterministic
/// given (seed, stream, n).  Non-finite evaluations abort with the offending
/// point in the message.
template <class F>
McResult mc_integrate(F&& f, const GaussianMeasureSpec& spec, RngStream rng,
                      std::int64_t n) {
  if (n < 1) throw precondition_error("mc_integrate: n < 1");
  const double sd = std::sqrt(spec.coordinate_variance());
  Philox gen(rng);
  Eigen::VectorXd pt(spec.dim());
  complexd sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < spec.dim(); ++j) pt(j) = sd * gen.next_normal();
    complexd v = f(pt);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::string msg = "mc_integrate: non-finite value at point (";
      for (int j = 0; j < pt.size(); ++j)
        msg += (j ? ", " : "") + std::to_string(pt(j));
      throw numeric_error(msg + ")");
    }
    sum += v;
    sum_sq += std::norm(v);
  }
  McResult r;
  r.samples = n;
  r.mean = sum / static_cast<double>(n);
  double var = sum_sq / static_cast<double>(n) - std::norm(r.mean);
  r.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  return r;
}

// ---------------------------------------------------------------------------
// Cameron-Martin divergence probe: medians of the partial sums
// sum_{k<N} x_k^2 under the configuration measure.  Linear growth in N is
// the finite-truncation shadow of the a.s. divergence on the full space.

inline std::vector<double> cameron_martin_divergence_probe(
    double h, const std::vector<int>& n_list, RngStream rng, int samples) {
  if (!(h > 0.0)) throw precondition_error("divergence_probe: h <= 0");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw precondition_error("divergence_probe: N list not increasing");
  if (n_list.empty() || n_list.front() < 1)
    throw precondition_error("divergence_probe: bad N list");
  const int n_max = n_list.back();
  const double sd = std::sqrt(h / 2.0);
  std::vector<std::vector<double>> sums(
      n_list.size(), std::vector<double>(static_cast<std::size_t>(samples)));
  Philox gen(rng);
  for (int s = 0; s < samples; ++s) {
    double acc = 0.0;
    std::size_t which = 0;
    for (int k = 0; k < n_max; ++k) {
      double x = sd * gen.next_normal();
      acc += x * x;
      while (which < n_list.size() &&
             n_list[which] == k + 1) {
        sums[which][static_cast<std::size_t>(s)] = acc;
        ++which;
      }
    }
  }
  std::vector<double> medians;
  medians.reserve(sums.size());
  for (auto& v : sums) {
    std::nth_element(v.begin(), v.begin() + samples / 2, v.end());
    medians.push_back(v[static_cast<std::size_t>(samples / 2)]);
  }
  return medians;
}

}  // namespace fockweyl
