#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slicedw {

// Ascending sort of finite doubles. LSD radix on the IEEE bit pattern for
// large inputs, std::sort otherwise. scratch is grown as needed.
void sort_doubles(std::span<double> values, std::vector<std::uint64_t>& scratch);
void sort_doubles(std::span<double> values);

}  // namespace slicedw
