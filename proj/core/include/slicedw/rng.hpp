#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace slicedw::rng {

// Stream identifiers mixed into derived seeds. Values are part of the
// reproducibility contract: changing one changes every downstream dataset.
enum class StreamTag : std::uint64_t {
  ProjectionSphere = 0x5350'4845'5245ULL,
  ProjectionGaussian = 0x4741'5553'53ULL,
  FactorHyper = 0x4859'5045'52ULL,
  FactorRows = 0x524f'5753ULL,
  FactorRoleFirst = 0x4649'5253'54ULL,
  FactorRoleSecond = 0x5345'434fULL,
  Ar1Rows = 0x4152'31ULL,
  PairSample = 0x5041'4952ULL,
  Cell = 0x4345'4c4cULL,
  Method = 0x4d45'5448ULL,
  Reference = 0x5245'4645ULL,
  DatasetX = 0x4441'5441'58ULL,
  DatasetY = 0x4441'5441'59ULL,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Derive a child seed from a parent seed and a tag. Distinct (seed, tag)
// pairs give statistically unrelated children.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;
inline std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag) noexcept {
  return derive_seed(seed, static_cast<std::uint64_t>(tag));
}

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 64-bit key selects the family of streams, the 64-bit stream id is
/// placed in the upper two counter words and the lower two count blocks.
/// A stream is therefore addressable by (key, id) without touching any
/// other stream's state, which is what makes per-projection and per-row
/// parallel generation reproducible.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t key, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Uniform double in the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept;
  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_words_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Gamma(shape, scale) with mean shape*scale. Marsaglia-Tsang squeeze/rejection
// for shape >= 1; shape < 1 uses the U^{1/shape} boost.
double gamma(Philox& gen, double shape, double scale);

// Student t with `dof` degrees of freedom: Z / sqrt(chi2_dof / dof).
double student_t(Philox& gen, double dof);

// Fill `out` with i.i.d. N(0, 1).
void fill_normal(Philox& gen, std::span<double> out) noexcept;

}  // namespace slicedw::rng
