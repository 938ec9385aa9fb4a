#pragma once

#include <cstdint>
#include <vector>

#include "slicedw/rng.hpp"
#include "slicedw/types.hpp"

namespace testsupport {

inline slicedw::EmpiricalDistribution rows(std::size_t n, std::size_t d, std::vector<double> data) {
  return slicedw::EmpiricalDistribution(n, d, std::move(data));
}

// n rows of N(mean, sigma^2 I_d).
inline slicedw::EmpiricalDistribution gaussian_rows(std::size_t n, const std::vector<double>& mean,
                                                    double sigma, std::uint64_t seed) {
  const std::size_t d = mean.size();
  slicedw::rng::Philox gen(seed, 0xbeef);
  std::vector<double> data(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) data[i * d + j] = mean[j] + sigma * gen.normal();
  }
  return slicedw::EmpiricalDistribution(n, d, std::move(data));
}

inline slicedw::EmpiricalDistribution std_gaussian_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  return gaussian_rows(n, std::vector<double>(d, 0.0), 1.0, seed);
}

inline double mean_of(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

inline double var_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  long double s = 0.0L;
  for (double x : v) s += (x - m) * (x - m);
  return static_cast<double>(s / static_cast<long double>(v.size() - 1));
}

}  // namespace testsupport
