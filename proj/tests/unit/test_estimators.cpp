#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "slicedw/core_ot.hpp"
#include "slicedw/datagen.hpp"
#include "slicedw/error.hpp"
#include "slicedw/estimators.hpp"
#include "support.hpp"

using namespace slicedw;
using testsupport::rows;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no slicedw::Error thrown";
  return ErrorCode::InvalidArgument;
}

EmpiricalDistribution shifted(const EmpiricalDistribution& mu, const std::vector<double>& c) {
  std::vector<double> data(mu.data().begin(), mu.data().end());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < mu.dim(); ++j) data[i * mu.dim() + j] += c[j];
  }
  return rows(mu.size(), mu.dim(), data);
}

// Independent evaluation in long double.
long double c_oracle(std::size_t d, long double p) {
  const long double h = 0.5L * static_cast<long double>(d);
  return std::sqrt(2.0L / static_cast<long double>(d)) *
         std::exp((std::lgamma(h + p / 2) - std::lgamma(h)) / p);
}

}  // namespace

TEST(Center, Examples) {
  const Centered one = center(rows(1, 3, {1, 2, 3}));
  EXPECT_EQ(one.mean, (std::vector<double>{1, 2, 3}));
  for (double v : one.centered.data()) EXPECT_EQ(v, 0.0);

  const Centered two = center(rows(2, 2, {1, 0, 3, 0}));
  EXPECT_EQ(two.mean, (std::vector<double>{2, 0}));
  EXPECT_EQ(two.centered, rows(2, 2, {-1, 0, 1, 0}));

  const Centered again = center(two.centered);
  for (double m : again.mean) EXPECT_NEAR(m, 0.0, 1e-15);
  EXPECT_EQ(again.centered, two.centered);
}

TEST(Project, Examples) {
  const auto mu = rows(3, 2, {1, 2, 3, 4, 5, 6});
  const auto p1 = project(mu, std::vector<double>{1, 0});
  EXPECT_EQ(std::vector<double>(p1.values().begin(), p1.values().end()), (std::vector<double>{1, 3, 5}));
  const auto p0 = project(mu, std::vector<double>{0, 0});
  for (double v : p0.values()) EXPECT_EQ(v, 0.0);
  const auto p2 = project(mu, std::vector<double>{2, 0});
  EXPECT_EQ(std::vector<double>(p2.values().begin(), p2.values().end()), (std::vector<double>{2, 6, 10}));
  EXPECT_EQ(code_of([&] { project(mu, std::vector<double>{1, 0, 0}); }), ErrorCode::DimMismatch);
}

TEST(MonteCarlo, IdenticalInputsGiveZero) {
  const auto mu = testsupport::std_gaussian_rows(50, 7, 1);
  for (auto law : {ProjectionLaw::SphereUniform, ProjectionLaw::GaussianGammaD}) {
    for (std::size_t L : {1, 17, 100}) {
      MonteCarloOptions o;
      o.projections = L;
      o.law = law;
      EXPECT_EQ(monte_carlo_sw_pp(mu, mu, o).estimate.value_sq, 0.0);
    }
  }
}

TEST(MonteCarlo, PointMassTranslation) {
  // Every projection gives <theta, c e_1>^2; E<theta, e_1>^2 = 1/d on the sphere.
  const std::size_t n = 8, d = 5;
  const double c = 3.0;
  std::vector<double> shifted_data(n * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) shifted_data[i * d] = c;
  const auto mu = rows(n, d, std::vector<double>(n * d, 0.0));
  const auto nu = rows(n, d, shifted_data);
  MonteCarloOptions o;
  o.projections = 20000;
  o.seed = 4;
  const auto r = monte_carlo_sw_pp(mu, nu, o);
  EXPECT_NEAR(r.estimate.value_sq, c * c / d, 4 * r.standard_error());
  EXPECT_EQ(r.estimate.num_projections, 20000u);
  EXPECT_EQ(r.per_projection.size(), 20000u);
  EXPECT_EQ(r.estimate.method, SwMethod::MonteCarloSphere);
}

TEST(MonteCarlo, MatchesGaussianClosedForm) {
  const std::size_t d = 10, n = 5000;
  std::vector<double> m1(d), m2(d);
  for (std::size_t j = 0; j < d; ++j) {
    m1[j] = 0.1 * static_cast<double>(j);
    m2[j] = 1.0 - 0.05 * static_cast<double>(j);
  }
  const auto mu = testsupport::gaussian_rows(n, m1, 1.0, 11);
  const auto nu = testsupport::gaussian_rows(n, m2, 2.0, 12);
  MonteCarloOptions o;
  o.projections = 5000;
  const auto r = monte_carlo_sw_pp(mu, nu, o);
  const double exact = ot::sw2_gaussian_iso_closed({m1, 1.0}, {m2, 2.0});
  // MC error plus O(n^-1/2) sampling error of the empirical laws.
  EXPECT_NEAR(r.estimate.value_sq, exact, 3 * r.standard_error() + 0.05 * exact);
}

TEST(MonteCarlo, SameSeedSameBitsAcrossWorkers) {
  const auto mu = testsupport::std_gaussian_rows(300, 20, 1);
  const auto nu = testsupport::gaussian_rows(300, std::vector<double>(20, 0.5), 2.0, 2);
  MonteCarloOptions o;
  o.projections = 203;
  o.seed = 99;
  o.workers = 1;
  const auto a = monte_carlo_sw_pp(mu, nu, o);
  o.workers = 8;
  const auto b = monte_carlo_sw_pp(mu, nu, o);
  EXPECT_EQ(a.per_projection, b.per_projection);
  EXPECT_EQ(a.estimate.value_sq, b.estimate.value_sq);
  o.seed = 100;
  EXPECT_NE(monte_carlo_sw_pp(mu, nu, o).estimate.value_sq, a.estimate.value_sq);
}

TEST(MonteCarlo, PrefixOfLargerRun) {
  // theta_l depends on (seed, law, l) only.
  const auto mu = testsupport::std_gaussian_rows(64, 9, 3);
  const auto nu = testsupport::std_gaussian_rows(64, 9, 4);
  MonteCarloOptions o;
  o.projections = 40;
  const auto small = monte_carlo_sw_pp(mu, nu, o);
  o.projections = 100;
  const auto large = monte_carlo_sw_pp(mu, nu, o);
  for (std::size_t l = 0; l < 40; ++l) EXPECT_EQ(small.per_projection[l], large.per_projection[l]);
}

TEST(MonteCarlo, ProjectionLawsAgreeAtP2) {
  const auto mu = testsupport::std_gaussian_rows(400, 6, 5);
  const auto nu = testsupport::gaussian_rows(400, std::vector<double>(6, 1.0), 1.5, 6);
  MonteCarloOptions o;
  o.projections = 10000;
  const auto s = monte_carlo_sw_pp(mu, nu, o);
  o.law = ProjectionLaw::GaussianGammaD;
  const auto g = monte_carlo_sw_pp(mu, nu, o);
  const double se = std::hypot(s.standard_error(), g.standard_error());
  EXPECT_NEAR(s.estimate.value_sq, g.estimate.value_sq, 3 * se);
}

TEST(MonteCarlo, Errors) {
  const auto a = testsupport::std_gaussian_rows(10, 3, 1);
  const auto b = testsupport::std_gaussian_rows(11, 3, 1);
  const auto c = testsupport::std_gaussian_rows(10, 4, 1);
  MonteCarloOptions o;
  EXPECT_EQ(code_of([&] { monte_carlo_sw_pp(a, b, o); }), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([&] { monte_carlo_sw_pp(a, c, o); }), ErrorCode::DimMismatch);
  o.p = 0.5;
  EXPECT_EQ(code_of([&] { monte_carlo_sw_pp(a, a, o); }), ErrorCode::InvalidOrder);
  o.p = 2;
  o.projections = 0;
  EXPECT_EQ(code_of([&] { monte_carlo_sw_pp(a, a, o); }), ErrorCode::InvalidArgument);
}

TEST(ProjectionConstant, UnitAtP2) {
  for (std::size_t d : {1, 2, 3, 7, 10, 100, 10000, 1000000}) {
    EXPECT_NEAR(gaussian_projection_constant(d, 2.0), 1.0, 1e-12) << d;
  }
}

TEST(ProjectionConstant, P1Values) {
  EXPECT_NEAR(gaussian_projection_constant(1, 1.0), std::sqrt(2.0 / M_PI), 1e-14);
  EXPECT_NEAR(gaussian_projection_constant(10000, 1.0), 1.0, 1e-3);
  for (std::size_t d : {2, 5, 50, 333, 10000}) {
    for (double p : {1.0, 1.5, 3.0}) {
      EXPECT_NEAR(gaussian_projection_constant(d, p), static_cast<double>(c_oracle(d, p)), 1e-12)
          << d << " " << p;
    }
  }
}

TEST(ProjectionConstant, Errors) {
  EXPECT_EQ(code_of([] { gaussian_projection_constant(0, 2.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { gaussian_projection_constant(3, 0.9); }), ErrorCode::InvalidOrder);
}

TEST(MomentStats, OriginSample) {
  const auto s = moment_stats(rows(1, 3, {0, 0, 0}), std::nullopt);
  EXPECT_EQ(s.m2_raw, 0.0);
  EXPECT_EQ(s.alpha, 0.0);
  EXPECT_EQ(s.beta1, 0.0);
  EXPECT_EQ(s.beta2, 0.0);
}

TEST(MomentStats, PlusMinusE1) {
  const auto s = moment_stats(rows(2, 3, {1, 0, 0, -1, 0, 0}), std::nullopt);
  EXPECT_EQ(s.m2_raw, 1.0);
  EXPECT_EQ(s.alpha, 0.0);
  EXPECT_EQ(s.beta1, 1.0);
  EXPECT_EQ(s.beta2, 1.0);
  EXPECT_EQ(s.pair_count_used, 4u);
}

TEST(MomentStats, GaussianPopulationValues) {
  const std::size_t d = 64;
  const auto mu = testsupport::std_gaussian_rows(10000, d, 31);
  const auto s = moment_stats(mu, std::nullopt);
  EXPECT_NEAR(s.m2_raw, 64.0, 0.05 * 64);
  EXPECT_NEAR(s.beta2, 8.0, 0.1 * 8);
  EXPECT_LE(s.beta1, s.beta2);
  // Sampled pairs estimate the same quantities.
  const auto sampled = moment_stats(mu, std::uint64_t{2'000'000}, 5);
  EXPECT_EQ(sampled.pair_count_used, 2'000'000u);
  EXPECT_NEAR(sampled.beta2, s.beta2, 0.03 * s.beta2);
  EXPECT_NEAR(sampled.beta1, s.beta1, 0.03 * s.beta1);
  EXPECT_EQ(sampled.m2_raw, s.m2_raw);
}

TEST(MomentStats, DeterministicAcrossWorkers) {
  const auto mu = testsupport::std_gaussian_rows(700, 13, 3);
  const auto a = moment_stats(mu, std::nullopt, 0, 1);
  const auto b = moment_stats(mu, std::nullopt, 0, 8);
  EXPECT_EQ(a.beta1, b.beta1);
  EXPECT_EQ(a.beta2, b.beta2);
  const auto c = moment_stats(mu, std::uint64_t{300000}, 9, 1);
  const auto e = moment_stats(mu, std::uint64_t{300000}, 9, 8);
  EXPECT_EQ(c.beta1, e.beta1);
  EXPECT_EQ(c.beta2, e.beta2);
}

TEST(MomentStats, BudgetRules) {
  EXPECT_FALSE(default_pair_budget(4000).has_value());
  EXPECT_EQ(default_pair_budget(4001), std::optional<std::uint64_t>(10'000'000));
  EXPECT_EQ(code_of([] { moment_stats(rows(1, 1, {1}), std::uint64_t{0}); }), ErrorCode::InvalidArgument);
}

TEST(XiD, Examples) {
  MomentStats zero;
  zero.dim = 5;
  EXPECT_EQ(xi_d(zero), 0.0);
  MomentStats s;
  s.dim = 1;
  s.alpha = s.m2_raw = s.beta1 = s.beta2 = 1.0;
  EXPECT_DOUBLE_EQ(xi_d(s), 3.0);
  MomentStats t = s;
  t.dim = 4;
  t.alpha = 2.0;
  const double before = xi_d(t);
  t.alpha = 4.0;
  EXPECT_DOUBLE_EQ(xi_d(t) - before, 2.0 / 4.0);
}

TEST(GapBound, Examples) {
  MomentStats zero;
  zero.dim = 2;
  EXPECT_EQ(theorem2_gap_bound(zero, zero), 0.0);
  MomentStats four;
  four.dim = 1;
  four.alpha = 4.0;
  MomentStats z1;
  z1.dim = 1;
  EXPECT_DOUBLE_EQ(theorem2_gap_bound(four, z1), 2.0);
  EXPECT_EQ(theorem2_gap_bound(four, z1), theorem2_gap_bound(z1, four));
  EXPECT_EQ(code_of([&] { theorem2_gap_bound(four, zero); }), ErrorCode::DimMismatch);
}

TEST(SwHat, IdenticalAndTranslated) {
  const auto mu = testsupport::std_gaussian_rows(200, 4, 1);
  EXPECT_EQ(sw_hat(mu, mu).value_sq, 0.0);
  const std::vector<double> c{1, -2, 0.5, 3};
  const auto nu = shifted(mu, c);
  EXPECT_NEAR(sw_hat(mu, nu).value_sq, (1 + 4 + 0.25 + 9) / 4.0, 1e-12);
  EXPECT_EQ(sw_hat(mu, nu).method, SwMethod::Deterministic);
  EXPECT_EQ(sw_hat(mu, nu).num_projections, 0u);
}

TEST(SwHat, MatchesClosedFormOnGaussians) {
  const std::size_t d = 50, n = 20000;
  std::vector<double> m1(d, 1.0), m2(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) m2[j] = 1.0 + std::sin(static_cast<double>(j));
  const auto mu = testsupport::gaussian_rows(n, m1, 1.0, 1);
  const auto nu = testsupport::gaussian_rows(n, m2, std::sqrt(10.0), 2);
  const double exact = ot::sw2_gaussian_iso_closed({m1, 1.0}, {m2, std::sqrt(10.0)});
  EXPECT_NEAR(std::sqrt(sw_hat(mu, nu).value_sq), std::sqrt(exact), 0.01 * std::sqrt(exact));
}

TEST(SwHat, DifferentSampleCountsAllowed) {
  const auto mu = testsupport::std_gaussian_rows(100, 3, 1);
  const auto nu = testsupport::std_gaussian_rows(77, 3, 2);
  EXPECT_GE(sw_hat(mu, nu).value_sq, 0.0);
  EXPECT_EQ(code_of([&] { sw_hat(mu, testsupport::std_gaussian_rows(5, 4, 1)); }), ErrorCode::DimMismatch);
}

TEST(SwHat, EqualsClosedFormOfFittedGaussians) {
  const auto mu = testsupport::gaussian_rows(300, {1, 2, 3}, 2.0, 1);
  const auto nu = testsupport::gaussian_rows(300, {0, 0, 1}, 0.5, 2);
  EXPECT_NEAR(sw_hat(mu, nu).value_sq,
              ot::sw2_gaussian_iso_closed(fit_iso_gaussian(mu), fit_iso_gaussian(nu)), 1e-12);
}

TEST(UncenteredGaussian, IgnoresMeansOnlyThroughSecondMoment) {
  // Zero-mean data: same as the centered approximation up to the empirical mean.
  const auto mu = rows(2, 2, {1, 0, -1, 0});
  const auto nu = rows(2, 2, {0, 3, 0, -3});
  EXPECT_DOUBLE_EQ(sw_uncentered_gaussian(mu, nu).value_sq, sw_hat(mu, nu).value_sq);
  // (sqrt(1/2) - sqrt(9/2))^2 = 2
  EXPECT_DOUBLE_EQ(sw_uncentered_gaussian(mu, nu).value_sq, 2.0);
  EXPECT_EQ(sw_uncentered_gaussian(mu, nu).method, SwMethod::UncenteredGaussian);
}

TEST(TranslationDecompose, Examples) {
  const auto est = [](const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    return sw_hat(a, b).value_sq;
  };
  const auto mu = testsupport::gaussian_rows(100, {0, 0, 0}, 1.0, 1);
  const auto nu = testsupport::gaussian_rows(100, {0, 0, 0}, 2.0, 2);
  const auto r = sw_translation_decompose(mu, nu, est);
  EXPECT_LT(r.mean_part, 0.1);
  EXPECT_EQ(r.total, r.centered_part + r.mean_part);

  const auto centered = center(mu).centered;
  const auto same_means = sw_translation_decompose(centered, center(nu).centered, est);
  EXPECT_NEAR(same_means.total, same_means.centered_part, 1e-24);

  const std::vector<double> c{3, 0, 4};
  const auto t = sw_translation_decompose(mu, shifted(mu, c), est);
  EXPECT_NEAR(t.total, 25.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.centered_part, 0.0, 1e-20);
}

TEST(TranslationDecompose, PerProjectionIdentity) {
  rng::Philox gen(77, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + trial % 5, n = 5 + trial % 20;
    std::vector<double> ma(d), mb(d);
    for (auto& v : ma) v = gen.normal();
    for (auto& v : mb) v = 2 * gen.normal();
    const auto mu = testsupport::gaussian_rows(n, ma, 1.0 + trial % 3, 100 + trial);
    const auto nu = testsupport::gaussian_rows(n, mb, 0.5, 200 + trial);
    std::vector<double> theta(d);
    datagen::sphere_direction(d, 3, trial, theta);
    const Centered cm = center(mu), cn = center(nu);
    double shift = 0.0;
    for (std::size_t j = 0; j < d; ++j) shift += theta[j] * (cm.mean[j] - cn.mean[j]);
    const double lhs = ot::wasserstein_1d_pp(project(mu, theta), project(nu, theta), 2);
    const double rhs =
        ot::wasserstein_1d_pp(project(cm.centered, theta), project(cn.centered, theta), 2) + shift * shift;
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, lhs));
  }
}

TEST(Bounds, Independent) {
  EXPECT_EQ(indep_bound(7, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(indep_bound(1, 1, 1), 3.0);
  EXPECT_NEAR(indep_bound(16, 1, 1), 0.25 + 0.5 + std::pow(16.0, -0.4), 1e-15);
  EXPECT_LT(indep_bound(160, 2, 3), indep_bound(16, 2, 3));
  EXPECT_THROW(indep_bound(3, -1, 0), Error);
}

TEST(Bounds, WeakDependence) {
  EXPECT_EQ(weakdep_bound(5, {0, 0, 0, 0}), 0.0);
  EXPECT_NEAR(weakdep_bound(1, {1, 1, 1, 1}), std::sqrt(3.0) + std::pow(3.0, 0.25) + std::pow(3.0, 0.4), 1e-14);
  const WeakDepParams p{0.8, 1.5, 0.3, 1};
  for (std::size_t d : {1, 10, 100}) EXPECT_LE(weakdep_bound(16 * d, p), weakdep_bound(d, p));
  EXPECT_THROW(weakdep_bound(3, {1, 0.5, 0.1, 1}), Error);
  EXPECT_THROW(weakdep_bound(3, {0.5, 1, 0.9, 1}), Error);
}

TEST(AutocovDecay, IndependentColumns) {
  const auto mu = testsupport::std_gaussian_rows(20000, 8, 3);
  const auto a = autocov_decay(mu, 3);
  ASSERT_EQ(a.lags, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_NEAR(a.cov[0], 1.0, 0.03);
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_NEAR(a.cov[k], 0.0, 0.02);
  EXPECT_NEAR(a.cov_sq[0], 2.0, 0.1);
}

TEST(AutocovDecay, Ar1Decay) {
  datagen::Ar1Config cfg;
  cfg.dim = 12;
  cfg.n = 20000;
  cfg.alpha = 0.6;
  cfg.burn_in = 500;
  cfg.seed = 8;
  const auto a = autocov_decay(datagen::gen_ar1(cfg), 3);
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_NEAR(a.cov[k] / a.cov[0], std::pow(0.6, k), 0.03);
}

TEST(AutocovDecay, LagZeroIsAverageColumnVariance) {
  const auto mu = rows(3, 2, {1, 2, 3, 6, 5, 10});
  // Column variances (population): 8/3 and 32/3.
  EXPECT_NEAR(autocov_decay(mu, 0).cov[0], (8.0 / 3 + 32.0 / 3) / 2, 1e-12);
  EXPECT_EQ(code_of([&] { autocov_decay(mu, 2); }), ErrorCode::InvalidLag);
}

TEST(CovFrobenius, Examples) {
  EXPECT_EQ(cov_frobenius_sq(rows(3, 2, {1, 1, 1, 1, 1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(cov_frobenius_sq(rows(2, 2, {1, 0, -1, 0})), 4.0);
  const auto mu = testsupport::std_gaussian_rows(9, 30, 2);
  std::vector<double> rev;
  for (std::size_t i = mu.size(); i-- > 0;) rev.insert(rev.end(), mu.row(i).begin(), mu.row(i).end());
  EXPECT_NEAR(cov_frobenius_sq(mu), cov_frobenius_sq(rows(9, 30, rev)), 1e-10);
  // Both Gram paths agree.
  const auto tall = testsupport::std_gaussian_rows(40, 6, 2);
  std::vector<double> t;
  for (std::size_t i = 0; i < 40; ++i) t.insert(t.end(), tall.row(i).begin(), tall.row(i).end());
  double direct = 0;
  const Centered c = center(tall);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < 40; ++i) s += c.centered(i, a) * c.centered(i, b);
      direct += (s / 39) * (s / 39);
    }
  }
  EXPECT_NEAR(cov_frobenius_sq(tall), direct, 1e-10 * direct);
  EXPECT_EQ(code_of([] { cov_frobenius_sq(rows(1, 2, {1, 2})); }), ErrorCode::InsufficientSamples);
}

TEST(MeanInverseSqNorm, Examples) {
  EXPECT_DOUBLE_EQ(mean_inverse_sq_norm(rows(2, 2, {1, 0, 0, -1})), 1.0);
  EXPECT_DOUBLE_EQ(mean_inverse_sq_norm(rows(2, 2, {1, 0, 0, 2})), 0.625);
  EXPECT_DOUBLE_EQ(mean_inverse_sq_norm(rows(2, 2, {3, 0, 0, 6})), 0.625 / 9);
  EXPECT_EQ(code_of([] { mean_inverse_sq_norm(rows(2, 2, {1, 0, 0, 0})); }), ErrorCode::ZeroNormRow);
}
