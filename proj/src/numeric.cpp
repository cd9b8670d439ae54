#include "firm/numeric.hpp"

namespace firm {

namespace {
constexpr std::size_t kLeafSize = 8;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= kLeafSize) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string_view hex64(std::uint64_t value, char (&buffer)[17]) {
    static constexpr char digits[] = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buffer[i] = digits[value & 0xf];
        value >>= 4;
    }
    buffer[16] = '\0';
    return {buffer, 16};
}

}  // namespace firm
