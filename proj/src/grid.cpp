#include "firm/grid.hpp"

#include <algorithm>
#include <random>

#include "firm/errors.hpp"
#include "firm/numeric.hpp"

namespace firm {

std::vector<double> GridSpec::points() const {
    if (resolution < 2) throw ConfigError("grid resolution must be at least 2");
    std::vector<double> pts;
    pts.reserve(resolution + 1 + random_points);
    for (unsigned i = 0; i <= resolution; ++i) {
        pts.push_back(static_cast<double>(i) / resolution);
    }
    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < random_points; ++i) pts.push_back(unit_from_bits(rng()));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace firm
