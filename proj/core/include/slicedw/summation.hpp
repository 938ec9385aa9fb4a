#pragma once

#include <cstddef>
#include <span>

namespace slicedw {

// Pairwise (cascade) summation. Error grows as O(eps log n) instead of
// O(eps n); the tree shape depends only on the length, so results are
// reproducible.
double pairwise_sum(std::span<const double> xs) noexcept;

}  // namespace slicedw
