#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace firm {

/// Sum with a fixed pairwise reduction tree. The tree shape depends only on
/// the length of the input, so results do not change with thread count.
double pairwise_sum(std::span<const double> values);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string_view hex64(std::uint64_t value, char (&buffer)[17]);

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
constexpr double unit_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace firm
