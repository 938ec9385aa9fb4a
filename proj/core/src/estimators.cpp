#include "slicedw/estimators.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>

#include "slicedw/core_ot.hpp"
#include "slicedw/datagen.hpp"
#include "slicedw/error.hpp"
#include "slicedw/parallel.hpp"
#include "slicedw/rng.hpp"
#include "slicedw/sorting.hpp"
#include "slicedw/summation.hpp"

namespace slicedw {

std::string_view to_string(SwMethod method) noexcept {
  switch (method) {
    case SwMethod::MonteCarloSphere: return "mc-sphere";
    case SwMethod::MonteCarloGaussian: return "mc-gaussian";
    case SwMethod::Deterministic: return "deterministic";
    case SwMethod::ClosedFormGaussian: return "closed-form-gauss";
    case SwMethod::UncenteredGaussian: return "gaussian-raw";
  }
  return "unknown";
}

namespace {

__extension__ using u128 = unsigned __int128;


using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

void require_same_dim(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu) {
  if (mu.dim() != nu.dim()) {
    throw Error(ErrorCode::DimMismatch, "dimensions differ: " + std::to_string(mu.dim()) + " vs " +
                                            std::to_string(nu.dim()));
  }
}

double dot(const double* a, const double* b, std::size_t d) noexcept {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= d; k += 4) {
    acc[0] += a[k] * b[k];
    acc[1] += a[k + 1] * b[k + 1];
    acc[2] += a[k + 2] * b[k + 2];
    acc[3] += a[k + 3] * b[k + 3];
  }
  for (; k < d; ++k) acc[0] += a[k] * b[k];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sq_norm(std::span<const double> v) noexcept { return dot(v.data(), v.data(), v.size()); }

constexpr std::size_t kRowBlock = 256;

// Column means: naive sums within fixed row blocks, pairwise across blocks.
std::vector<double> column_means(const EmpiricalDistribution& mu) {
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<double> partial(blocks * d, 0.0);  // column-major by block: [j * blocks + b]
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<double> acc(d, 0.0);
    const std::size_t end = std::min(n, (b + 1) * kRowBlock);
    for (std::size_t i = b * kRowBlock; i < end; ++i) {
      const auto row = mu.row(i);
      for (std::size_t j = 0; j < d; ++j) acc[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) partial[j * blocks + b] = acc[j];
  }
  std::vector<double> mean(d);
  for (std::size_t j = 0; j < d; ++j) {
    mean[j] = pairwise_sum(std::span<const double>(partial).subspan(j * blocks, blocks)) /
              static_cast<double>(n);
  }
  return mean;
}

// n^{-1} sum_j ||x_j - shift||^2 (shift may be empty for no shift).
double mean_sq_norm(const EmpiricalDistribution& mu, std::span<const double> shift) {
  const std::size_t d = mu.dim();
  std::vector<double> norms(mu.size());
  std::vector<double> tmp(d);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto row = mu.row(i);
    if (shift.empty()) {
      norms[i] = sq_norm(row);
    } else {
      for (std::size_t j = 0; j < d; ++j) tmp[j] = row[j] - shift[j];
      norms[i] = sq_norm(tmp);
    }
  }
  return pairwise_sum(norms) / static_cast<double>(mu.size());
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sq(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sq[j] = diff * diff;
  }
  return pairwise_sum(sq);
}

// log Gamma(x + a) - log Gamma(x) for x > 0, a >= 0, without the
// cancellation of subtracting two large lgamma values.
double log_gamma_ratio(double x, double a) {
  constexpr double kAsymptoticFrom = 20.0;
  double shift_terms = 0.0;
  while (x < kAsymptoticFrom) {
    // Gamma(x + a) / Gamma(x) = [(x + a) / x]^{-1} Gamma(x + 1 + a) / Gamma(x + 1)
    shift_terms -= std::log1p(a / x);
    x += 1.0;
  }
  // Stirling: log Gamma(z) = (z - 1/2) log z - z + log(2 pi)/2 + sum_k c_k / z^{2k-1}
  const double main = (x - 0.5) * std::log1p(a / x) + a * std::log(x + a) - a;
  constexpr std::array<double, 6> coeff{1.0 / 12.0,    -1.0 / 360.0, 1.0 / 1260.0,
                                        -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0};
  double corr = 0.0;
  const double inv_xa = 1.0 / (x + a);
  const double inv_x = 1.0 / x;
  double pow_xa = inv_xa;
  double pow_x = inv_x;
  for (double c : coeff) {
    corr += c * (pow_xa - pow_x);
    pow_xa *= inv_xa * inv_xa;
    pow_x *= inv_x * inv_x;
  }
  return main + corr + shift_terms;
}

// Number of projections evaluated together by the Monte Carlo kernel. Fixed,
// so the work decomposition never depends on the worker count.
constexpr std::size_t kProjectionBlock = 16;

// out[b * n + i] = <theta_b, x_i> for the block's directions stored
// transposed in dirs[k * kProjectionBlock + b].
// Register tile of 4 rows x 8 directions, accumulated in k order so every
// output equals the plain dot product bit for bit.
using Vec8 = double __attribute__((vector_size(64)));
constexpr std::size_t kTileRows = 4;
constexpr std::size_t kTileCols = 16;

inline Vec8 load8(const double* p) {
  Vec8 v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

void project_rows_tiled(const double* __restrict x, std::size_t i0, std::size_t n, std::size_t d,
                        const double* __restrict dirs, std::size_t c0, double* __restrict out) {
  const double* r0 = x + i0 * d;
  const double* r1 = r0 + d;
  const double* r2 = r1 + d;
  const double* r3 = r2 + d;
  Vec8 a00{}, a01{}, a10{}, a11{}, a20{}, a21{}, a30{}, a31{};
  for (std::size_t k = 0; k < d; ++k) {
    const double* t = dirs + k * kProjectionBlock + c0;
    const Vec8 t0 = load8(t);
    const Vec8 t1 = load8(t + 8);
    const Vec8 x0 = Vec8{} + r0[k];
    const Vec8 x1 = Vec8{} + r1[k];
    const Vec8 x2 = Vec8{} + r2[k];
    const Vec8 x3 = Vec8{} + r3[k];
    a00 += x0 * t0;
    a01 += x0 * t1;
    a10 += x1 * t0;
    a11 += x1 * t1;
    a20 += x2 * t0;
    a21 += x2 * t1;
    a30 += x3 * t0;
    a31 += x3 * t1;
  }
  const Vec8 acc[kTileRows][2] = {{a00, a01}, {a10, a11}, {a20, a21}, {a30, a31}};
  for (std::size_t r = 0; r < kTileRows; ++r) {
    for (std::size_t c = 0; c < kTileCols; ++c) out[(c0 + c) * n + i0 + r] = acc[r][c / 8][c % 8];
  }
}

void project_block(const EmpiricalDistribution& mu, const std::vector<double>& dirs,
                   std::vector<double>& out) {
  static_assert(kProjectionBlock % kTileCols == 0);
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  const double* x = mu.data().data();
  std::size_t i = 0;
  for (; i + kTileRows <= n; i += kTileRows) {
    for (std::size_t c0 = 0; c0 < kProjectionBlock; c0 += kTileCols) {
      project_rows_tiled(x, i, n, d, dirs.data(), c0, out.data());
    }
  }
  for (; i < n; ++i) {
    std::array<double, kProjectionBlock> acc{};
    const double* row = x + i * d;
    for (std::size_t k = 0; k < d; ++k) {
      const double xk = row[k];
      const double* t = dirs.data() + k * kProjectionBlock;
      for (std::size_t b = 0; b < kProjectionBlock; ++b) acc[b] += xk * t[b];
    }
    for (std::size_t b = 0; b < kProjectionBlock; ++b) out[b * n + i] = acc[b];
  }
}

}  // namespace

double MonteCarloResult::standard_error() const {
  const std::size_t L = per_projection.size();
  if (L < 2) return 0.0;
  const double mean = estimate.value_sq;
  std::vector<double> dev(L);
  for (std::size_t l = 0; l < L; ++l) {
    const double diff = per_projection[l] - mean;
    dev[l] = diff * diff;
  }
  const double variance = pairwise_sum(dev) / static_cast<double>(L - 1);
  return std::sqrt(variance / static_cast<double>(L));
}

PairBudget default_pair_budget(std::size_t n) noexcept {
  if (n <= kAllPairsMaxN) return std::nullopt;
  return kDefaultPairBudget;
}

Centered center(const EmpiricalDistribution& mu) {
  std::vector<double> mean = column_means(mu);
  std::vector<double> data(mu.data().begin(), mu.data().end());
  const std::size_t d = mu.dim();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) data[i * d + j] -= mean[j];
  }
  return {std::move(mean), EmpiricalDistribution(mu.size(), d, std::move(data))};
}

Samples1d project(const EmpiricalDistribution& mu, std::span<const double> theta) {
  if (theta.size() != mu.dim()) {
    throw Error(ErrorCode::DimMismatch, "theta has length " + std::to_string(theta.size()) +
                                            ", data has dimension " + std::to_string(mu.dim()));
  }
  std::vector<double> values(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) values[i] = dot(mu.row(i).data(), theta.data(), mu.dim());
  return Samples1d(std::move(values));
}

MonteCarloResult monte_carlo_sw_pp(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                                   const MonteCarloOptions& options) {
  const auto start = Clock::now();
  require_same_dim(mu, nu);
  if (mu.size() != nu.size()) {
    throw Error(ErrorCode::LengthMismatch, "Monte Carlo SW needs equal sample counts, got " +
                                               std::to_string(mu.size()) + " and " +
                                               std::to_string(nu.size()));
  }
  if (options.projections == 0) throw Error(ErrorCode::InvalidArgument, "need at least one projection");
  if (!(options.p >= 1.0) || !std::isfinite(options.p)) {
    throw Error(ErrorCode::InvalidOrder, "order p must be >= 1, got " + std::to_string(options.p));
  }

  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  const std::size_t L = options.projections;
  const std::size_t blocks = (L + kProjectionBlock - 1) / kProjectionBlock;
  const bool sphere = options.law == ProjectionLaw::SphereUniform;

  MonteCarloResult result;
  result.per_projection.assign(L, 0.0);

  parallel_for(blocks, resolve_workers(options.workers), [&](std::size_t block) {
    std::vector<double> dirs(d * kProjectionBlock, 0.0);
    std::vector<double> theta(d);
    const std::size_t first = block * kProjectionBlock;
    const std::size_t count = std::min(kProjectionBlock, L - first);
    for (std::size_t b = 0; b < count; ++b) {
      if (sphere) {
        datagen::sphere_direction(d, options.seed, first + b, theta);
      } else {
        datagen::gamma_d_direction(d, options.seed, first + b, theta);
      }
      for (std::size_t k = 0; k < d; ++k) dirs[k * kProjectionBlock + b] = theta[k];
    }
    std::vector<double> px(kProjectionBlock * n);
    std::vector<double> py(kProjectionBlock * n);
    std::vector<double> scratch(n);
    std::vector<std::uint64_t> sort_scratch;
    project_block(mu, dirs, px);
    project_block(nu, dirs, py);
    for (std::size_t b = 0; b < count; ++b) {
      const auto xs = std::span<double>(px).subspan(b * n, n);
      const auto ys = std::span<double>(py).subspan(b * n, n);
      sort_doubles(xs, sort_scratch);
      sort_doubles(ys, sort_scratch);
      result.per_projection[first + b] = ot::wasserstein_1d_pp_sorted(xs, ys, options.p, scratch);
    }
  });

  result.estimate.value_sq = pairwise_sum(result.per_projection) / static_cast<double>(L);
  result.estimate.method = sphere ? SwMethod::MonteCarloSphere : SwMethod::MonteCarloGaussian;
  result.estimate.num_projections = L;
  result.estimate.seed = options.seed;
  result.estimate.wall_time_ns = elapsed_ns(start);
  return result;
}

double gaussian_projection_constant(std::size_t d, double p) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidOrder, "order p must be >= 1, got " + std::to_string(p));
  }
  const double half_d = 0.5 * static_cast<double>(d);
  const double log_c = 0.5 * std::log(2.0 / static_cast<double>(d)) + log_gamma_ratio(half_d, 0.5 * p) / p;
  return std::exp(log_c);
}

MomentStats moment_stats(const EmpiricalDistribution& mu, PairBudget pair_budget, std::uint64_t seed,
                         unsigned workers) {
  if (pair_budget && *pair_budget == 0) {
    throw Error(ErrorCode::InvalidArgument, "pair budget must be >= 1");
  }
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();

  MomentStats stats;
  stats.dim = d;
  stats.mean = column_means(mu);

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = sq_norm(mu.row(i));
  stats.m2_raw = pairwise_sum(norms) / static_cast<double>(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(norms[i] - stats.m2_raw);
  stats.alpha = pairwise_sum(dev) / static_cast<double>(n);

  workers = resolve_workers(workers);
  double sum_abs = 0.0;
  double sum_sq = 0.0;

  if (!pair_budget) {
    // All n^2 ordered pairs, from the upper triangle of the Gram matrix
    // with off-diagonal entries counted twice.
    constexpr std::size_t kGramBlock = 64;
    const std::size_t blocks = (n + kGramBlock - 1) / kGramBlock;
    std::vector<double> block_abs(blocks, 0.0);
    std::vector<double> block_sq(blocks, 0.0);
    parallel_for(blocks, workers, [&](std::size_t bi) {
      const std::size_t i_end = std::min(n, (bi + 1) * kGramBlock);
      std::vector<double> abs_terms;
      std::vector<double> sq_terms;
      for (std::size_t i = bi * kGramBlock; i < i_end; ++i) {
        const double* xi = mu.row(i).data();
        double row_abs = 0.0;
        double row_sq = 0.0;
        for (std::size_t j = i; j < n; ++j) {
          const double g = dot(xi, mu.row(j).data(), d);
          const double w = (j == i) ? 1.0 : 2.0;
          row_abs += w * std::abs(g);
          row_sq += w * g * g;
        }
        abs_terms.push_back(row_abs);
        sq_terms.push_back(row_sq);
      }
      block_abs[bi] = pairwise_sum(abs_terms);
      block_sq[bi] = pairwise_sum(sq_terms);
    });
    sum_abs = pairwise_sum(block_abs);
    sum_sq = pairwise_sum(block_sq);
    stats.pair_count_used = static_cast<std::uint64_t>(n) * n;
  } else {
    constexpr std::uint64_t kChunk = 1 << 16;
    const std::uint64_t budget = *pair_budget;
    const std::uint64_t chunks = (budget + kChunk - 1) / kChunk;
    const std::uint64_t key = rng::derive_seed(seed, rng::StreamTag::PairSample);
    std::vector<double> chunk_abs(chunks, 0.0);
    std::vector<double> chunk_sq(chunks, 0.0);
    parallel_for(chunks, workers, [&](std::size_t c) {
      rng::Philox gen(key, c);
      const std::uint64_t count = std::min<std::uint64_t>(kChunk, budget - c * kChunk);
      std::vector<double> abs_terms(count);
      std::vector<double> sq_terms(count);
      for (std::uint64_t t = 0; t < count; ++t) {
        const auto i = static_cast<std::size_t>((static_cast<u128>(gen()) * n) >> 64);
        const auto j = static_cast<std::size_t>((static_cast<u128>(gen()) * n) >> 64);
        const double g = dot(mu.row(i).data(), mu.row(j).data(), d);
        abs_terms[t] = std::abs(g);
        sq_terms[t] = g * g;
      }
      chunk_abs[c] = pairwise_sum(abs_terms);
      chunk_sq[c] = pairwise_sum(sq_terms);
    });
    sum_abs = pairwise_sum(chunk_abs);
    sum_sq = pairwise_sum(chunk_sq);
    stats.pair_count_used = budget;
  }

  const double pairs = static_cast<double>(stats.pair_count_used);
  stats.beta1 = sum_abs / pairs;
  stats.beta2 = std::sqrt(sum_sq / pairs);
  return stats;
}

double xi_d(const MomentStats& stats) {
  if (stats.dim == 0) throw Error(ErrorCode::InvalidArgument, "MomentStats has dim 0");
  if (stats.m2_raw < 0.0 || stats.alpha < 0.0 || stats.beta1 < 0.0 || stats.beta2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "moment statistics must be nonnegative");
  }
  const double inner = stats.alpha + std::sqrt(stats.m2_raw * stats.beta1) +
                       std::pow(stats.m2_raw, 0.2) * std::pow(stats.beta2, 0.8);
  return inner / static_cast<double>(stats.dim);
}

double theorem2_gap_bound(const MomentStats& stats_mu, const MomentStats& stats_nu) {
  if (stats_mu.dim != stats_nu.dim) {
    throw Error(ErrorCode::DimMismatch, "moment statistics of different dimensions");
  }
  return std::sqrt(xi_d(stats_mu) + xi_d(stats_nu));
}

IsoGaussian fit_iso_gaussian(const EmpiricalDistribution& mu) {
  IsoGaussian g;
  g.mean = column_means(mu);
  g.sigma = std::sqrt(mean_sq_norm(mu, g.mean) / static_cast<double>(mu.dim()));
  return g;
}

SwEstimate sw_hat(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu) {
  const auto start = Clock::now();
  require_same_dim(mu, nu);
  const IsoGaussian a = fit_iso_gaussian(mu);
  const IsoGaussian b = fit_iso_gaussian(nu);
  const double ds = a.sigma - b.sigma;
  SwEstimate est;
  est.value_sq = ds * ds + sq_distance(a.mean, b.mean) / static_cast<double>(mu.dim());
  est.method = SwMethod::Deterministic;
  est.wall_time_ns = elapsed_ns(start);
  return est;
}

SwEstimate sw_uncentered_gaussian(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu) {
  const auto start = Clock::now();
  require_same_dim(mu, nu);
  const double d = static_cast<double>(mu.dim());
  const double ds = std::sqrt(mean_sq_norm(mu, {}) / d) - std::sqrt(mean_sq_norm(nu, {}) / d);
  SwEstimate est;
  est.value_sq = ds * ds;
  est.method = SwMethod::UncenteredGaussian;
  est.wall_time_ns = elapsed_ns(start);
  return est;
}

TranslationDecomposition sw_translation_decompose(const EmpiricalDistribution& mu,
                                                  const EmpiricalDistribution& nu,
                                                  const CenteredEstimator& estimator) {
  require_same_dim(mu, nu);
  const Centered cm = center(mu);
  const Centered cn = center(nu);
  TranslationDecomposition out;
  out.mean_part = sq_distance(cm.mean, cn.mean) / static_cast<double>(mu.dim());
  out.centered_part = estimator(cm.centered, cn.centered);
  out.total = out.centered_part + out.mean_part;
  return out;
}

double indep_bound(std::size_t d, double max_var, double max_var_sq) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(max_var >= 0.0) || !(max_var_sq >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "variances must be nonnegative");
  }
  const double dd = static_cast<double>(d);
  return std::sqrt(max_var_sq / dd) + (std::pow(dd, -0.25) + std::pow(dd, -0.4)) * max_var;
}

double weakdep_bound(std::size_t d, const WeakDepParams& params) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  const auto& [rho0, rho_inf, rho_tail, K] = params;
  if (!(rho0 >= 0.0) || !(rho_inf >= 0.0) || !(rho_tail >= 0.0) || !(K >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "weak-dependence coefficients must be nonnegative");
  }
  if (rho_tail > rho0 || rho0 > rho_inf) {
    throw Error(ErrorCode::InvalidArgument, "need rho_max_tail <= rho0 <= rho_inf");
  }
  const double dd = static_cast<double>(d);
  const double s = rho0 * rho0 + 2.0 * rho_inf * rho_tail;
  return std::sqrt((rho0 + 2.0 * rho_inf) / dd) +
         std::pow(dd, -0.25) * std::sqrt(rho0) * std::pow(s, 0.25) +
         std::pow(dd, -0.4) * std::pow(rho0, 0.2) * std::pow(s, 0.4);
}

AutocovDecay autocov_decay(const EmpiricalDistribution& mu, std::size_t max_lag) {
  const std::size_t n = mu.size();
  const std::size_t d = mu.dim();
  if (max_lag >= d) {
    throw Error(ErrorCode::InvalidLag, "max_lag " + std::to_string(max_lag) +
                                           " must be below the dimension " + std::to_string(d));
  }
  // Centered values and centered squares, column by column.
  std::vector<double> centered(mu.data().begin(), mu.data().end());
  std::vector<double> squares(n * d);
  for (std::size_t k = 0; k < n * d; ++k) squares[k] = centered[k] * centered[k];
  const std::vector<double> mean = column_means(mu);
  const std::vector<double> mean_sq =
      column_means(EmpiricalDistribution(n, d, std::vector<double>(squares)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      centered[i * d + j] -= mean[j];
      squares[i * d + j] -= mean_sq[j];
    }
  }

  AutocovDecay out;
  std::vector<double> per_sample(n);
  std::vector<double> per_sample_sq(n);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    const std::size_t pairs = d - lag;
    std::vector<double> cov_i(pairs);
    std::vector<double> cov_sq_i(pairs);
    for (std::size_t j = 0; j < pairs; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        per_sample[i] = centered[i * d + j] * centered[i * d + j + lag];
        per_sample_sq[i] = squares[i * d + j] * squares[i * d + j + lag];
      }
      cov_i[j] = pairwise_sum(per_sample) / static_cast<double>(n);
      cov_sq_i[j] = pairwise_sum(per_sample_sq) / static_cast<double>(n);
    }
    out.lags.push_back(lag);
    out.cov.push_back(pairwise_sum(cov_i) / static_cast<double>(pairs));
    out.cov_sq.push_back(pairwise_sum(cov_sq_i) / static_cast<double>(pairs));
  }
  return out;
}

double cov_frobenius_sq(const EmpiricalDistribution& batch) {
  const std::size_t n = batch.size();
  const std::size_t d = batch.dim();
  if (n < 2) throw Error(ErrorCode::InsufficientSamples, "covariance needs at least 2 samples");
  const Centered c = center(batch);
  const EmpiricalDistribution& xc = c.centered;
  // ||Xc^T Xc||_F = ||Xc Xc^T||_F: use whichever Gram matrix is smaller.
  std::vector<double> entries;
  if (d <= n) {
    std::vector<double> columns(d * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) columns[j * n + i] = xc(i, j);
    }
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const double cab = dot(columns.data() + a * n, columns.data() + b * n, n);
        entries.push_back(cab * cab);
      }
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const double g = dot(xc.row(a).data(), xc.row(b).data(), d);
        entries.push_back(g * g);
      }
    }
  }
  const double denom = static_cast<double>(n - 1);
  return pairwise_sum(entries) / (denom * denom);
}

double mean_inverse_sq_norm(const EmpiricalDistribution& batch) {
  std::vector<double> inv(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double norm_sq = sq_norm(batch.row(i));
    if (norm_sq == 0.0) throw Error(ErrorCode::ZeroNormRow, "row " + std::to_string(i) + " has zero norm");
    inv[i] = 1.0 / norm_sq;
  }
  return pairwise_sum(inv) / static_cast<double>(batch.size());
}

}  // namespace slicedw
