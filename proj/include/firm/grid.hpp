#pragma once

#include <cstdint>
#include <vector>

namespace firm {

/// Evaluation points for the property certifiers: the uniform grid
/// {i / resolution : 0 <= i <= resolution} plus seeded uniform draws.
struct GridSpec {
    unsigned resolution = 64;
    unsigned random_points = 200;
    std::uint64_t seed = 42;

    /// Sorted, duplicate-free points. Throws ConfigError if resolution < 2.
    std::vector<double> points() const;
};

}  // namespace firm
