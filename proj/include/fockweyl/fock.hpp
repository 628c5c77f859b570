#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "fockweyl/core_index.hpp"
#include "fockweyl/errors.hpp"
#include "fockweyl/hermite.hpp"

namespace fockweyl {

/// Enumerated truncation with positional lookup; shared immutably between
/// vectors and matrices living on the same truncated space.
class BasisIndex {
 public:
  explicit BasisIndex(Truncation t) : trunc_(std::move(t)) {
    elements_ = enumerate_multiindices(trunc_);
    for (std::size_t i = 0; i < elements_.size(); ++i)
      lookup_[elements_[i].exponents_on(trunc_.modes)] = static_cast<int>(i);
  }

  const Truncation& truncation() const { return trunc_; }
  const ModeSet& modes() const { return trunc_.modes; }
  int dim() const { return static_cast<int>(elements_.size()); }
  const MultiIndex& element(int i) const {
    return elements_[static_cast<std::size_t>(i)];
  }
  const std::vector<MultiIndex>& elements() const { return elements_; }

  /// Position of alpha in the enumeration, or -1 when outside the truncation.
  int position(const MultiIndex& alpha) const {
    if (!alpha.support().subset_of(trunc_.modes)) return -1;
    auto it = lookup_.find(alpha.exponents_on(trunc_.modes));
    return it == lookup_.end() ? -1 : it->second;
  }

 private:
  Truncation trunc_;
  std::vector<MultiIndex> elements_;
  std::map<std::vector<int>, int> lookup_;
};

using BasisPtr = std::shared_ptr<const BasisIndex>;

inline BasisPtr make_basis(Truncation t) {
  return std::make_shared<BasisIndex>(std::move(t));
}

enum class FockSide {
  config,   // coefficients over the normalized e-basis of H(E)
  phase_w,  // coefficients over the normalized w-basis inside H_Phi(E)
};

/// Vector of a truncated Fock space, stored against the normalized basis.
struct FockVector {
  BasisPtr basis;
  Eigen::VectorXcd coeffs;
  FockSide side = FockSide::config;

  static FockVector vacuum(BasisPtr b, FockSide s = FockSide::config) {
    FockVector v{std::move(b), {}, s};
    v.coeffs = Eigen::VectorXcd::Zero(v.basis->dim());
    int pos = v.basis->position(MultiIndex());
    v.coeffs(pos) = 1.0;
    return v;
  }

  static FockVector unit(BasisPtr b, const MultiIndex& alpha,
                         FockSide s = FockSide::config) {
    FockVector v{std::move(b), {}, s};
    v.coeffs = Eigen::VectorXcd::Zero(v.basis->dim());
    int pos = v.basis->position(alpha);
    if (pos < 0) throw precondition_error("FockVector: index outside basis");
    v.coeffs(pos) = 1.0;
    return v;
  }

  double norm() const { return coeffs.norm(); }
};

/// Dense matrix of an operator in the truncation's normalized basis;
/// entries(row, col) = <Op e_col, e_row>.
struct OperatorMatrix {
  BasisPtr basis;
  Eigen::MatrixXcd entries;

  static OperatorMatrix zero(BasisPtr b) {
    OperatorMatrix m{std::move(b), {}};
    m.entries = Eigen::MatrixXcd::Zero(m.basis->dim(), m.basis->dim());
    return m;
  }
  static OperatorMatrix identity(BasisPtr b) {
    OperatorMatrix m{std::move(b), {}};
    m.entries = Eigen::MatrixXcd::Identity(m.basis->dim(), m.basis->dim());
    return m;
  }

  double hermiticity_deficit() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
  FockVector apply(const FockVector& v) const {
    return {v.basis, entries * v.coeffs, v.side};
  }
};

/// (a_j, a*_j) on the truncation: a*_j e_alpha = sqrt(alpha_j + 1)
/// e_{alpha+delta_j} (dropped past the caps), a_j its matrix adjoint.
inline std::pair<OperatorMatrix, OperatorMatrix> ladder_matrices(
    int mode, const BasisPtr& basis) {
  if (!basis->modes().contains(mode))
    throw precondition_error("ladder_matrices: mode not in truncation");
  OperatorMatrix create = OperatorMatrix::zero(basis);
  for (int i = 0; i < basis->dim(); ++i) {
    const MultiIndex& alpha = basis->element(i);
    int up = basis->position(alpha.raised(mode));
    if (up >= 0)
      create.entries(up, i) = std::sqrt(alpha.degree(mode) + 1.0);
  }
  OperatorMatrix annihilate{basis, create.entries.adjoint()};
  return {std::move(annihilate), std::move(create)};
}

/// Segal field Phi_S(X) = (a(X) + a*(X)) / sqrt(2); Hermitian for every
/// complex X because a is antilinear and a* linear.
inline OperatorMatrix segal_field_matrix(const Eigen::VectorXcd& X,
                                         const BasisPtr& basis) {
  if (X.size() != basis->modes().size())
    throw precondition_error("segal_field_matrix: dimension mismatch");
  OperatorMatrix out = OperatorMatrix::zero(basis);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < basis->dim(); ++i) {
    const MultiIndex& alpha = basis->element(i);
    for (int p = 0; p < basis->modes().size(); ++p) {
      int mode = basis->modes().id(p);
      int up = basis->position(alpha.raised(mode));
      if (up >= 0)
        out.entries(up, i) +=
            inv_sqrt2 * X(p) * std::sqrt(alpha.degree(mode) + 1.0);
      if (alpha.degree(mode) > 0) {
        int down = basis->position(alpha.lowered(mode));
        if (down >= 0)
          out.entries(down, i) +=
              inv_sqrt2 * std::conj(X(p)) * std::sqrt(1.0 * alpha.degree(mode));
      }
    }
  }
  return out;
}

/// Coefficient of the coherent vector e^{i Phi_S(Z)} Omega on the normalized
/// basis element of degree n in one mode with amplitude z.
inline complexd coherent_coefficient_1mode(int n, complexd z) {
  complexd v = 1.0;
  for (int k = 1; k <= n; ++k) v *= complexd(0.0, 1.0) * z / std::sqrt(2.0 * k);
  return v;
}

/// Truncation of e^{i Phi_S(Z)} Omega; norm <= 1, increasing to 1 as caps
/// grow; overlap with the vacuum is e^{-|Z|^2/4}.
inline FockVector coherent_vector(const Eigen::VectorXcd& Z,
                                  const BasisPtr& basis) {
  if (Z.size() != basis->modes().size())
    throw precondition_error("coherent_vector: dimension mismatch");
  FockVector v{basis, Eigen::VectorXcd::Zero(basis->dim()), FockSide::config};
  const double damp = std::exp(-0.25 * Z.squaredNorm());
  for (int i = 0; i < basis->dim(); ++i) {
    const MultiIndex& alpha = basis->element(i);
    complexd c = damp;
    for (const auto& [id, e] : alpha.entries())
      c *= coherent_coefficient_1mode(e, Z(basis->modes().index_of(id)));
    v.coeffs(i) = c;
  }
  return v;
}

/// Fock-side coherent vector phi_{X,h} attached to a phase-space point,
/// i.e. e^{(i/sqrt h) Phi_S(xi - i x)} Omega.
inline FockVector phase_coherent_vector(const PhasePoint& X, double h,
                                        const BasisPtr& basis) {
  Eigen::VectorXcd Z(X.dim());
  for (int j = 0; j < X.dim(); ++j)
    Z(j) = complexd(X.xi(j), -X.x(j)) / std::sqrt(h);
  return coherent_vector(Z, basis);
}

/// Its coefficient on a single-mode level n without building the vector.
inline complexd phase_coherent_coefficient_1mode(int n, double x, double xi,
                                                 double h) {
  complexd z = complexd(xi, -x) / std::sqrt(h);
  return std::exp(-(x * x + xi * xi) / (4.0 * h)) *
         coherent_coefficient_1mode(n, z);
}

struct TranslationMatrix {
  OperatorMatrix op;
  double unitarity_deficit = 0.0;
  int pad = 0;
};

/// e^{i Phi_S(Z)} on the truncation.  Phi_S splits over modes, so each factor
/// is exponentiated (scaling-and-squaring) on its padded single-mode space and
/// the tensor product is cropped to the truncation.  The unitarity deficit of
/// the cropped block against the padded product is reported; when
/// `deficit_threshold` > 0 the pad doubles until the deficit passes or
/// `max_pad` is exhausted (then signals numeric_error).
inline TranslationMatrix weyl_translation_matrix(const Eigen::VectorXcd& Z,
                                                 const BasisPtr& basis,
                                                 int pad,
                                                 double deficit_threshold = 0.0,
                                                 int max_pad = 96) {
  if (pad < 0) throw precondition_error("weyl_translation_matrix: pad < 0");
  if (Z.size() != basis->modes().size())
    throw precondition_error("weyl_translation_matrix: dimension mismatch");
  const int n_modes = basis->modes().size();
  const Truncation& t = basis->truncation();

  while (true) {
    std::vector<Eigen::MatrixXcd> factors, grams;
    for (int p = 0; p < n_modes; ++p) {
      const int cap = t.effective_cap(basis->modes().id(p));
      const int n = cap + pad + 1;
      Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (int k = 0; k + 1 < n; ++k) {
        B(k + 1, k) = inv_sqrt2 * Z(p) * std::sqrt(k + 1.0);
        B(k, k + 1) = inv_sqrt2 * std::conj(Z(p)) * std::sqrt(k + 1.0);
      }
      Eigen::MatrixXcd U = (complexd(0.0, 1.0) * B).exp();
      grams.push_back(U.adjoint() * U);
      factors.push_back(std::move(U));
    }

    OperatorMatrix out = OperatorMatrix::zero(basis);
    double deficit = 0.0;
    for (int col = 0; col < basis->dim(); ++col) {
      auto ae = basis->element(col).exponents_on(basis->modes());
      for (int row = 0; row < basis->dim(); ++row) {
        auto be = basis->element(row).exponents_on(basis->modes());
        complexd u = 1.0, g = 1.0;
        for (int p = 0; p < n_modes; ++p) {
          u *= factors[static_cast<std::size_t>(p)](
              be[static_cast<std::size_t>(p)], ae[static_cast<std::size_t>(p)]);
          g *= grams[static_cast<std::size_t>(p)](
              be[static_cast<std::size_t>(p)], ae[static_cast<std::size_t>(p)]);
        }
        out.entries(row, col) = u;
        double id = (row == col) ? 1.0 : 0.0;
        deficit = std::max(deficit, std::abs(g - id));
      }
    }
    if (deficit_threshold <= 0.0 || deficit <= deficit_threshold)
      return {std::move(out), deficit, pad};
    if (2 * pad > max_pad)
      throw numeric_error("weyl_translation_matrix: pad escalation exhausted");
    pad = std::max(1, 2 * pad);
  }
}

/// W_E as a basis map: relabels the normalized e-basis onto the normalized
/// w-basis.  Isometric on the truncation and tensorial over disjoint modes.
inline FockVector bargmann_functor_map(const FockVector& v) {
  if (v.side != FockSide::config)
    throw precondition_error("bargmann_functor_map: expects a config vector");
  return {v.basis, v.coeffs, FockSide::phase_w};
}

/// Configuration Segal isomorphism evaluated at a point of R^E.
inline complexd segal_iso_eval(const FockVector& v, double h,
                               const Eigen::VectorXd& x) {
  if (v.side != FockSide::config)
    throw precondition_error("segal_iso_eval: config point vs phase vector");
  if (x.size() != v.basis->modes().size())
    throw precondition_error("segal_iso_eval: dimension mismatch");
  const double scale = std::sqrt(2.0 / h);
  complexd out = 0.0;
  for (int i = 0; i < v.basis->dim(); ++i) {
    if (v.coeffs(i) == complexd(0.0, 0.0)) continue;
    const MultiIndex& alpha = v.basis->element(i);
    double p = 1.0;
    for (const auto& [id, e] : alpha.entries())
      p *= hermite_eval(e, scale * x(v.basis->modes().index_of(id)));
    out += v.coeffs(i) * p / std::sqrt(alpha.factorial());
  }
  return out;
}

/// Phase Segal isomorphism on the w-span, evaluated at a phase-space point:
/// the basis functions are the normalized Q's.
inline complexd segal_iso_eval(const FockVector& v, double h,
                               const PhasePoint& X) {
  if (v.side != FockSide::phase_w)
    throw precondition_error("segal_iso_eval: phase point vs config vector");
  if (X.dim() != v.basis->modes().size())
    throw precondition_error("segal_iso_eval: dimension mismatch");
  complexd out = 0.0;
  for (int i = 0; i < v.basis->dim(); ++i) {
    if (v.coeffs(i) == complexd(0.0, 0.0)) continue;
    const MultiIndex& alpha = v.basis->element(i);
    complexd q = std::pow(2.0 * h, -0.5 * alpha.total());
    for (const auto& [id, e] : alpha.entries()) {
      int pos = v.basis->modes().index_of(id);
      complexd z(X.x(pos), -X.xi(pos));
      for (int k = 0; k < e; ++k) q *= z;
    }
    out += v.coeffs(i) * q / std::sqrt(alpha.factorial());
  }
  return out;
}

}  // namespace fockweyl
