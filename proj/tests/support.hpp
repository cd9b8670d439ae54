#pragma once

// Shared generators for the property tests. Everything is seeded so a
// failure reproduces exactly.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "firm/data.hpp"
#include "firm/numeric.hpp"
#include "firm/operators.hpp"

namespace firm::test {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double unit() { return unit_from_bits(engine_()); }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    bool coin() { return (engine_() & 1u) != 0; }

    // Mixes exact grid values (0, 1, halves) in with continuous draws;
    // boundaries are where operator bugs hide.
    double truth() {
        switch (below(8)) {
            case 0: return 0.0;
            case 1: return 1.0;
            case 2: return static_cast<double>(below(65)) / 64.0;
            default: return unit();
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Random membership matrix with `columns` variables of `labels` labels each.
inline MembershipMatrix random_matrix(Gen& g, std::size_t rows, std::size_t columns, std::size_t labels) {
    Vocabulary vocab;
    for (std::size_t c = 0; c < columns; ++c) {
        vocab.variables.push_back("v" + std::to_string(c));
        std::vector<std::string> names;
        for (std::size_t l = 0; l < labels; ++l) names.push_back("L" + std::to_string(l));
        vocab.labels.push_back(std::move(names));
    }
    std::vector<double> data(rows * columns * labels);
    for (auto& v : data) v = g.truth();
    return MembershipMatrix(std::move(vocab), rows, std::move(data));
}

// Random numeric dataset; values on a coarse lattice so quantiles tie.
inline Dataset random_dataset(Gen& g, std::size_t rows, std::size_t columns) {
    Dataset ds;
    ds.row_count = rows;
    for (std::size_t c = 0; c < columns; ++c) {
        Column col;
        col.name = "x" + std::to_string(c);
        for (std::size_t r = 0; r < rows; ++r) col.numeric.push_back(static_cast<double>(g.below(40)) * 0.25);
        col.numeric[0] = 0.0;
        col.numeric[1] = 10.0;
        ds.columns.push_back(std::move(col));
    }
    return ds;
}

// Every registry pair the tests sweep over.
inline std::vector<OperatorPair> registry_pairs() {
    return {
        {TNormSpec::product(), ImplicationSpec::yager_iy()},
        {TNormSpec::minimum(), ImplicationSpec::yager_iy()},
        {TNormSpec::lukasiewicz(), ImplicationSpec::lukasiewicz()},
        {TNormSpec::product(), ImplicationSpec::goguen()},
        {TNormSpec::minimum(), ImplicationSpec::godel()},
        {TNormSpec::minimum(), ImplicationSpec::goguen()},
        {TNormSpec::schweizer_sklar(-0.5), ImplicationSpec::schweizer_sklar_k(-0.5)},
        {TNormSpec::schweizer_sklar(-1.0), ImplicationSpec::schweizer_sklar_k(-1.0)},
        {TNormSpec::schweizer_sklar(-10.0), ImplicationSpec::schweizer_sklar_k(-10.0)},
        {TNormSpec::lukasiewicz(), ImplicationSpec::ip(0.01)},
        {TNormSpec::lukasiewicz(), ImplicationSpec::ip(1.0)},
        {TNormSpec::lukasiewicz(), ImplicationSpec::ip(10.0)},
    };
}

}  // namespace firm::test
