#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slicedw/types.hpp"

namespace slicedw::datagen {

enum class FactorFamily { GaussianFactors, GammaFactors };
enum class FactorRole { First, Second };
enum class Ar1Noise { Gaussian01, StudentT10 };

struct FactorConfig {
  std::size_t dim = 1;
  std::size_t n = 1;
  FactorFamily family = FactorFamily::GaussianFactors;
  bool centered = false;
  FactorRole role = FactorRole::First;
  std::uint64_t seed = 0;
};

struct Ar1Config {
  std::size_t dim = 1;
  std::size_t n = 1;
  double alpha = 0.0;
  Ar1Noise noise = Ar1Noise::Gaussian01;
  std::size_t burn_in = 10'000;
  std::uint64_t seed = 0;
};

/// Per-column law of a factor dataset. For GaussianFactors, column j is
/// N(location[j], scale^2); for GammaFactors it is Gamma(location[j], scale)
/// (shape, scale).
struct FactorParams {
  FactorFamily family = FactorFamily::GaussianFactors;
  std::vector<double> location;
  double scale = 1.0;
};

// Hyperparameters for a config. Depend on (seed, role) only, never on n.
FactorParams factor_params(const FactorConfig& cfg);

EmpiricalDistribution gen_factors(const FactorConfig& cfg, unsigned workers = 0);

// Independent AR(1) trajectories X_1 = e_1, X_t = alpha X_{t-1} + e_t, run for
// burn_in + dim steps keeping the last dim values. One trajectory per row.
EmpiricalDistribution gen_ar1(const Ar1Config& cfg, unsigned workers = 0);

// Direction `index` of the uniform-on-sphere stream keyed by seed.
void sphere_direction(std::size_t d, std::uint64_t seed, std::uint64_t index, std::span<double> out);
// Direction `index` of the N(0, I_d / d) stream keyed by seed.
void gamma_d_direction(std::size_t d, std::uint64_t seed, std::uint64_t index, std::span<double> out);

std::vector<std::vector<double>> sample_sphere(std::size_t d, std::uint64_t seed, std::size_t count);
std::vector<std::vector<double>> sample_gamma_d(std::size_t d, std::uint64_t seed, std::size_t count);

// Subtract the empirical column means.
EmpiricalDistribution center_columns(const EmpiricalDistribution& mu);

}  // namespace slicedw::datagen
