#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "slicedw/types.hpp"

namespace slicedw {

enum class SwMethod {
  MonteCarloSphere,
  MonteCarloGaussian,
  Deterministic,
  ClosedFormGaussian,
  UncenteredGaussian,
};

std::string_view to_string(SwMethod method) noexcept;

enum class ProjectionLaw {
  SphereUniform,   // uniform on S^{d-1}
  GaussianGammaD,  // N(0, I_d / d)
};

/// An SW^2 value (or mean W_p^p for Monte Carlo with p != 2) with its
/// provenance. num_projections is nonzero only for Monte Carlo methods.
struct SwEstimate {
  double value_sq = 0.0;
  SwMethod method = SwMethod::Deterministic;
  std::size_t num_projections = 0;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ns = 0;
};

struct MonteCarloOptions {
  std::size_t projections = 1000;
  double p = 2.0;
  ProjectionLaw law = ProjectionLaw::SphereUniform;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 = resolve_workers()
};

struct MonteCarloResult {
  SwEstimate estimate;
  std::vector<double> per_projection;  // W_p^p for each theta_l, index order

  // Standard error of estimate.value_sq from the per-projection spread.
  double standard_error() const;
};

struct Centered {
  std::vector<double> mean;
  EmpiricalDistribution centered;
};

/// Empirical moments entering Xi_d. m2_raw, alpha and the beta_q are
/// plug-in estimates on the empirical law; beta_q runs over ordered pairs
/// (i = j included), either all n^2 of them or pair_count_used sampled ones.
struct MomentStats {
  std::size_t dim = 0;
  double m2_raw = 0.0;
  std::vector<double> mean;
  double alpha = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::uint64_t pair_count_used = 0;
};

// nullopt enumerates all n^2 ordered pairs.
using PairBudget = std::optional<std::uint64_t>;

inline constexpr std::size_t kAllPairsMaxN = 4000;
inline constexpr std::uint64_t kDefaultPairBudget = 10'000'000;

// All pairs up to kAllPairsMaxN samples, kDefaultPairBudget sampled pairs beyond.
PairBudget default_pair_budget(std::size_t n) noexcept;

struct WeakDepParams {
  double rho0 = 0.0;
  double rho_inf = 0.0;
  double rho_max_tail = 0.0;  // max_{1 <= k <= d-1} rho(k)
  double K = 0.0;
};

struct AutocovDecay {
  std::vector<std::size_t> lags;
  std::vector<double> cov;
  std::vector<double> cov_sq;
};

struct TranslationDecomposition {
  double total = 0.0;
  double centered_part = 0.0;
  double mean_part = 0.0;
};

using CenteredEstimator =
    std::function<double(const EmpiricalDistribution&, const EmpiricalDistribution&)>;

Centered center(const EmpiricalDistribution& mu);

// <theta, x_j> for every sample, unsorted.
Samples1d project(const EmpiricalDistribution& mu, std::span<const double> theta);

/// Monte Carlo estimate (1/L) sum_l W_p^p(theta_l# mu, theta_l# nu).
///
/// theta_l is drawn from its own Philox stream keyed by (seed, law, l), the
/// projections are evaluated in fixed-size blocks and the mean is a pairwise
/// sum in index order, so the result is bitwise identical for any worker
/// count.
MonteCarloResult monte_carlo_sw_pp(const EmpiricalDistribution& mu,
                                   const EmpiricalDistribution& nu,
                                   const MonteCarloOptions& options);

// (2/d)^{1/2} {Gamma(d/2 + p/2) / Gamma(d/2)}^{1/p}, via log-Gamma.
double gaussian_projection_constant(std::size_t d, double p);

MomentStats moment_stats(const EmpiricalDistribution& mu, PairBudget pair_budget,
                         std::uint64_t seed = 0, unsigned workers = 0);

// d^{-1} {alpha + (m2 beta1)^{1/2} + m2^{1/5} beta2^{4/5}}
double xi_d(const MomentStats& stats);

// (Xi_d(mu) + Xi_d(nu))^{1/2}, i.e. the gap bound with unit constant.
double theorem2_gap_bound(const MomentStats& stats_mu, const MomentStats& stats_nu);

/// Deterministic SW_2^2 approximation:
///   (sigma_mu - sigma_nu)^2 + ||mean_mu - mean_nu||^2 / d,
/// sigma_xi^2 = m2(centered xi) / d. O(nd), no projections, no RNG.
/// mu and nu may have different sample counts.
SwEstimate sw_hat(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu);

// The approximation without centering: (sqrt(m2_raw(mu)/d) - sqrt(m2_raw(nu)/d))^2.
// Accurate only for zero-mean data; kept to exhibit that failure mode.
SwEstimate sw_uncentered_gaussian(const EmpiricalDistribution& mu,
                                  const EmpiricalDistribution& nu);

// Isotropic Gaussian with the empirical mean and sigma^2 = m2(centered)/d.
IsoGaussian fit_iso_gaussian(const EmpiricalDistribution& mu);

TranslationDecomposition sw_translation_decompose(const EmpiricalDistribution& mu,
                                                  const EmpiricalDistribution& nu,
                                                  const CenteredEstimator& estimator);

// Bound on Xi_d for independent zero-mean coordinates (unit constant).
double indep_bound(std::size_t d, double max_var, double max_var_sq);

// Bound on Xi_d for fourth-order weakly dependent sequences (unit constant).
double weakdep_bound(std::size_t d, const WeakDepParams& params);

AutocovDecay autocov_decay(const EmpiricalDistribution& mu, std::size_t max_lag);

// ||Cov||_F^2 of the rows, denominator n - 1.
double cov_frobenius_sq(const EmpiricalDistribution& batch);

double mean_inverse_sq_norm(const EmpiricalDistribution& batch);

}  // namespace slicedw
