#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fockweyl/gaussmeasure.hpp"

#include "oracles.hpp"

using namespace fockweyl;
using Catch::Approx;

TEST_CASE("tail summability for power-law weights", "[gaussmeasure]") {
  WeightSequence w{PowerLawWeights{1.0, 1}};
  auto rep = tail_summability_report(w, 1.0, 50);
  REQUIRE(rep.terms.size() == 50);
  CHECK(rep.summable_heuristic);
  // partial sums settle: final increments are negligible
  CHECK(rep.partial_sums[49] - rep.partial_sums[40] < 1e-12);
  // the proof bound dominates 2 R_j / sqrt(2 pi) at every j
  for (std::size_t j = 0; j < rep.terms.size(); ++j)
    CHECK(2.0 * rep.terms[j] / std::sqrt(2.0 * M_PI) <=
          rep.proof_bounds[j] * (1.0 + 1e-12));
  // lattice Z^1 sorted by |j|: b at position 10 has |j| = 5
  auto norms = WeightSequence::lattice_norms(1, 12);
  CHECK(norms[0] == 0.0);
  CHECK(norms[1] == 1.0);
  CHECK(norms[2] == 1.0);
  CHECK(norms[10] == 5.0);
}

TEST_CASE("constant weights are flagged not summable", "[gaussmeasure]") {
  WeightSequence w{ExplicitWeights{std::vector<double>(50, 1.0)}};
  auto rep = tail_summability_report(w, 1.0, 50);
  // every term equals int_1^inf e^{-x^2/2} dx = 0.39774...
  double expect = std::sqrt(2.0 * M_PI) * 0.158655253931457;  // 1 - Phi(1)
  for (double t : rep.terms) CHECK(t == Approx(expect).epsilon(1e-9));
  CHECK_FALSE(rep.summable_heuristic);
}

TEST_CASE("R_0 for b = 1, eps = 2 against quadrature oracle", "[gaussmeasure]") {
  double viaplibrary = gaussian_tail(2.0);
  double via_simpson = oracles::simpson(
      [](double x) { return std::exp(-x * x / 2.0); }, 2.0, 12.0, 4000);
  CHECK(viaplibrary == Approx(via_simpson).margin(1e-9));
  CHECK(viaplibrary == Approx(0.0570263).margin(1e-6));
}

TEST_CASE("sampling matches the densities' variances", "[gaussmeasure]") {
  const int n = 100000;
  GaussianMeasureSpec k{ModeSet({0, 1}), 1.0, MeasureKind::config_k};
  auto sk = sample(k, RngStream{42, 0}, n);
  REQUIRE(sk.cols() == 2);
  for (int j = 0; j < 2; ++j) {
    double mean = sk.col(j).mean();
    double var = (sk.col(j).array() - mean).square().sum() / (n - 1);
    double se = std::sqrt(2.0 / (n - 1)) * 0.5;  // var of var estimator, sigma^2=1/2
    CHECK(std::abs(var - 0.5) < 3.0 * se);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(0.5 / n));
  }

  GaussianMeasureSpec p{ModeSet({0}), 1.0, MeasureKind::phase_phi};
  auto sp = sample(p, RngStream{42, 1}, n);
  REQUIRE(sp.cols() == 2);
  for (int j = 0; j < 2; ++j) {
    double mean = sp.col(j).mean();
    double var = (sp.col(j).array() - mean).square().sum() / (n - 1);
    double se = std::sqrt(2.0 / (n - 1)) * 1.0;
    CHECK(std::abs(var - 1.0) < 3.0 * se);
  }
  // cross-coordinate covariance vanishes
  double cov = (sp.col(0).array() * sp.col(1).array()).mean();
  CHECK(std::abs(cov) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("identical streams replay identical samples", "[gaussmeasure]") {
  GaussianMeasureSpec k{ModeSet({0, 1, 2}), 0.7, MeasureKind::config_k};
  auto a = sample(k, RngStream{123456789, 5}, 64);
  auto b = sample(k, RngStream{123456789, 5}, 64);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  auto c = sample(k, RngStream{123456789, 6}, 64);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("product factorization via two-sample KS", "[gaussmeasure]") {
  const int n = 10000;
  GaussianMeasureSpec joint{ModeSet({0, 1, 2}), 1.0, MeasureKind::config_k};
  GaussianMeasureSpec factor{ModeSet({1}), 1.0, MeasureKind::config_k};
  auto sj = sample(joint, RngStream{7, 0}, n);
  auto sf = sample(factor, RngStream{7, 1}, n);
  std::vector<double> marginal(sj.col(1).data(), sj.col(1).data() + n);
  std::vector<double> direct(sf.col(0).data(), sf.col(0).data() + n);
  double d = oracles::ks_distance(marginal, direct);
  double critical = 1.628 * std::sqrt(2.0 / n);  // 1% level, equal sizes
  CHECK(d < critical);
}

TEST_CASE("Gaussian functionals and (2.9) moments by MC", "[gaussmeasure]") {
  // a = e_j picks the coordinate
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(3);
  a(1) = 1.0;
  Eigen::VectorXd x(3);
  x << 0.2, -1.4, 0.8;
  CHECK(ell_a(a, x) == complexd(-1.4, 0.0));
  CHECK(exp_ell(a, x) == std::exp(complexd(-1.4, 0.0)));

  const double h = 0.8;
  GaussianMeasureSpec spec{ModeSet({0, 1}), h, MeasureKind::config_k};
  Eigen::VectorXcd coeff(2);
  coeff << complexd(0.7, -0.3), complexd(-0.2, 1.1);

  auto sq = mc_integrate(
      [&](const Eigen::VectorXd& pt) {
        complexd v = ell_a(coeff, pt);
        return complexd(std::norm(v), 0.0);
      },
      spec, RngStream{99, 3}, 100000);
  double expect_l2 = h / 2.0 * coeff.squaredNorm();
  CHECK(std::abs(sq.mean.real() - expect_l2) < 3.0 * sq.std_error);

  auto esq = mc_integrate(
      [&](const Eigen::VectorXd& pt) {
        return complexd(std::norm(exp_ell(coeff, pt)), 0.0);
      },
      spec, RngStream{99, 4}, 100000);
  double expect_e = std::exp(h * coeff.real().squaredNorm());
  CHECK(std::abs(esq.mean.real() - expect_e) < 3.0 * esq.std_error);
}

TEST_CASE("mc_integrate basics", "[gaussmeasure]") {
  GaussianMeasureSpec spec{ModeSet({0}), 1.0, MeasureKind::config_k};
  auto one = mc_integrate([](const Eigen::VectorXd&) { return complexd(1.0); },
                          spec, RngStream{1, 0}, 1000);
  CHECK(one.mean.real() == 1.0);
  CHECK(one.std_error == 0.0);

  auto x2 = mc_integrate(
      [](const Eigen::VectorXd& p) { return complexd(p(0) * p(0)); }, spec,
      RngStream{1, 1}, 100000);
  CHECK(std::abs(x2.mean.real() - 0.5) < 3.0 * x2.std_error);

  CHECK_THROWS_AS(
      mc_integrate([](const Eigen::VectorXd&) {
        return complexd(std::numeric_limits<double>::infinity());
      }, spec, RngStream{1, 2}, 10),
      numeric_error);
}

TEST_CASE("divergence probe medians grow linearly", "[gaussmeasure]") {
  auto med = cameron_martin_divergence_probe(1.0, {10, 40, 100}, RngStream{5, 0},
                                             10000);
  REQUIRE(med.size() == 3);
  // chi^2_10 median is 9.342; scaled by h/2 = 0.5
  CHECK(med[0] == Approx(4.6709).margin(0.15));
  double factor = med[1] / med[0];
  CHECK(factor > 3.0);
  CHECK(factor < 5.0);
  CHECK_THROWS_AS(
      cameron_martin_divergence_probe(0.0, {10}, RngStream{5, 1}, 100),
      precondition_error);
}
