#include "slicedw/datagen.hpp"

#include <cmath>

#include "slicedw/error.hpp"
#include "slicedw/estimators.hpp"
#include "slicedw/parallel.hpp"
#include "slicedw/rng.hpp"

namespace slicedw::datagen {

namespace {

void require_dims(std::size_t d, std::size_t n) {
  if (d == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "need d >= 1 and n >= 1");
}

std::uint64_t role_key(const FactorConfig& cfg) {
  return rng::derive_seed(cfg.seed, cfg.role == FactorRole::First ? rng::StreamTag::FactorRoleFirst
                                                                  : rng::StreamTag::FactorRoleSecond);
}

}  // namespace

void sphere_direction(std::size_t d, std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  rng::Philox gen(rng::derive_seed(seed, rng::StreamTag::ProjectionSphere), index);
  for (;;) {
    rng::fill_normal(gen, out.first(d));
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) norm_sq += out[k] * out[k];
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (std::size_t k = 0; k < d; ++k) out[k] *= inv;
      return;
    }
  }
}

void gamma_d_direction(std::size_t d, std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  rng::Philox gen(rng::derive_seed(seed, rng::StreamTag::ProjectionGaussian), index);
  rng::fill_normal(gen, out.first(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) out[k] *= scale;
}

std::vector<std::vector<double>> sample_sphere(std::size_t d, std::uint64_t seed, std::size_t count) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  std::vector<std::vector<double>> out(count, std::vector<double>(d));
  for (std::size_t l = 0; l < count; ++l) sphere_direction(d, seed, l, out[l]);
  return out;
}

std::vector<std::vector<double>> sample_gamma_d(std::size_t d, std::uint64_t seed, std::size_t count) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  std::vector<std::vector<double>> out(count, std::vector<double>(d));
  for (std::size_t l = 0; l < count; ++l) gamma_d_direction(d, seed, l, out[l]);
  return out;
}

FactorParams factor_params(const FactorConfig& cfg) {
  require_dims(cfg.dim, cfg.n);
  rng::Philox gen(rng::derive_seed(role_key(cfg), rng::StreamTag::FactorHyper), 0);
  const bool first = cfg.role == FactorRole::First;
  FactorParams params;
  params.family = cfg.family;
  params.location.resize(cfg.dim);
  if (cfg.family == FactorFamily::GaussianFactors) {
    // means ~ N(1, 1); variance 1 (first) or 10 (second)
    for (double& m : params.location) m = 1.0 + gen.normal();
    params.scale = first ? 1.0 : std::sqrt(10.0);
  } else {
    // shapes ~ U[1, 5) (first) or U[5, 10) (second); scale 2 or 3
    for (double& k : params.location) k = first ? gen.uniform(1.0, 5.0) : gen.uniform(5.0, 10.0);
    params.scale = first ? 2.0 : 3.0;
  }
  return params;
}

EmpiricalDistribution center_columns(const EmpiricalDistribution& mu) { return center(mu).centered; }

EmpiricalDistribution gen_factors(const FactorConfig& cfg, unsigned workers) {
  const FactorParams params = factor_params(cfg);
  const std::size_t d = cfg.dim;
  const std::uint64_t key = rng::derive_seed(role_key(cfg), rng::StreamTag::FactorRows);
  std::vector<double> data(cfg.n * d);
  parallel_for(cfg.n, resolve_workers(workers), [&](std::size_t i) {
    rng::Philox gen(key, i);
    double* row = data.data() + i * d;
    if (params.family == FactorFamily::GaussianFactors) {
      for (std::size_t j = 0; j < d; ++j) row[j] = params.location[j] + params.scale * gen.normal();
    } else {
      for (std::size_t j = 0; j < d; ++j) row[j] = rng::gamma(gen, params.location[j], params.scale);
    }
  });
  EmpiricalDistribution out(cfg.n, d, std::move(data));
  return cfg.centered ? center_columns(out) : out;
}

EmpiricalDistribution gen_ar1(const Ar1Config& cfg, unsigned workers) {
  require_dims(cfg.dim, cfg.n);
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "AR(1) coefficient must lie in [0, 1)");
  }
  const std::size_t d = cfg.dim;
  const std::size_t steps = cfg.burn_in + d;
  const std::uint64_t key = rng::derive_seed(cfg.seed, rng::StreamTag::Ar1Rows);
  std::vector<double> data(cfg.n * d);
  parallel_for(cfg.n, resolve_workers(workers), [&](std::size_t i) {
    rng::Philox gen(key, i);
    auto innovation = [&] {
      return cfg.noise == Ar1Noise::Gaussian01 ? gen.normal() : rng::student_t(gen, 10.0);
    };
    double* row = data.data() + i * d;
    double x = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
      x = (t == 0 ? 0.0 : cfg.alpha * x) + innovation();
      if (t >= cfg.burn_in) row[t - cfg.burn_in] = x;
    }
  });
  return EmpiricalDistribution(cfg.n, d, std::move(data));
}

}  // namespace slicedw::datagen
