#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "firm/data.hpp"
#include "firm/miner.hpp"

namespace firm {

struct SimilarityResult {
    std::size_t intersection_size = 0;
    std::size_t union_size = 0;
    double percent = 100.0;  // two empty sets count as identical
};

/// Jaccard similarity in percent. Rules match when they have the same
/// antecedent and consequent (variable, label) names; quality values are
/// ignored. Throws UsageError when the label vocabularies differ.
SimilarityResult similarity(const RuleSet& first, const RuleSet& second);

/// Name of the generator behind gen_synthetic_ab, for provenance.
inline constexpr std::string_view kSyntheticGenerator = "mt19937_64";

/// A ~ U[0,100]; B ~ U[0,100] if A <= 70, else B ~ U[70,100].
Dataset gen_synthetic_ab(std::size_t n, std::uint64_t seed);

struct Measures {
    double fsupp = 0.0;
    double fconf = 0.0;
};

struct SweepRow {
    double param_value = 0.0;
    Measures a_to_b;
    Measures b_to_a;
};

enum class SweepFamily {
    SchweizerSklar,  // (schweizer_sklar lambda, schweizer_sklar_k lambda)
    LukasiewiczIp,   // (lukasiewicz, ip p)
};

OperatorPair sweep_pair(SweepFamily family, double value);

/// Quality of A=High -> B=High and B=High -> A=High for each parameter value,
/// in input order.
std::vector<SweepRow> param_sweep(SweepFamily family, const std::vector<double>& values, const Dataset& dataset,
                                  const std::vector<FuzzyPartition>& partitions, unsigned threads = 1);

struct ThresholdRow {
    double min_cov = 0.0;
    std::size_t n_rules = 0;
    double mean_conf_top20 = 0.0;
    double mean_supp_top20 = 0.0;
};

/// Mines once per coverage threshold with the remaining settings of `base`.
/// Means are taken over the ceil(20%) most confident rules (0 when there are
/// no rules).
std::vector<ThresholdRow> threshold_sweep(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions,
                                          const MinerConfig& base, const std::vector<double>& cov_values);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows);

}  // namespace firm
