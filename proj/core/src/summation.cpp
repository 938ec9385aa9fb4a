#include "slicedw/summation.hpp"

namespace slicedw {

namespace {
constexpr std::size_t kBlock = 128;

double block_sum(const double* x, std::size_t n) noexcept {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] += x[i];
    acc[1] += x[i + 1];
    acc[2] += x[i + 2];
    acc[3] += x[i + 3];
  }
  for (; i < n; ++i) acc[0] += x[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double cascade(const double* x, std::size_t n) noexcept {
  if (n <= kBlock) return block_sum(x, n);
  const std::size_t half = n / 2;
  return cascade(x, half) + cascade(x + half, n - half);
}
}  // namespace

double pairwise_sum(std::span<const double> xs) noexcept { return cascade(xs.data(), xs.size()); }

}  // namespace slicedw
