#include "slicedw/sorting.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace slicedw {

namespace {

constexpr std::size_t kRadixMin = 1792;
constexpr int kBits = 11;
constexpr int kPasses = 6;
constexpr std::size_t kBuckets = std::size_t{1} << kBits;

// Monotone map from double to unsigned order.
inline std::uint64_t to_key(double x) noexcept {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return (u >> 63) ? ~u : (u | 0x8000000000000000ULL);
}

inline double from_key(std::uint64_t k) noexcept {
  const std::uint64_t u = (k >> 63) ? (k & 0x7fffffffffffffffULL) : ~k;
  double x;
  std::memcpy(&x, &u, sizeof x);
  return x;
}

}  // namespace

void sort_doubles(std::span<double> values, std::vector<std::uint64_t>& scratch) {
  const std::size_t n = values.size();
  if (n < kRadixMin || n > 0xffffffffULL) {
    std::sort(values.begin(), values.end());
    return;
  }
  if (scratch.size() < 2 * n) scratch.resize(2 * n);
  std::uint64_t* src = scratch.data();
  std::uint64_t* dst = scratch.data() + n;

  std::array<std::array<std::uint32_t, kBuckets>, kPasses> hist{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t k = to_key(values[i]);
    src[i] = k;
    for (int p = 0; p < kPasses; ++p) ++hist[p][(k >> (p * kBits)) & (kBuckets - 1)];
  }
  for (int p = 0; p < kPasses; ++p) {
    auto& h = hist[p];
    std::uint32_t sum = 0;
    bool single_bucket = false;
    for (auto& c : h) {
      if (c == n) single_bucket = true;
      const std::uint32_t count = c;
      c = sum;
      sum += count;
    }
    if (single_bucket) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t k = src[i];
      dst[h[(k >> (p * kBits)) & (kBuckets - 1)]++] = k;
    }
    std::swap(src, dst);
  }
  for (std::size_t i = 0; i < n; ++i) values[i] = from_key(src[i]);
}

void sort_doubles(std::span<double> values) {
  std::vector<std::uint64_t> scratch;
  sort_doubles(values, scratch);
}

}  // namespace slicedw
