#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "firm/data.hpp"
#include "firm/operators.hpp"
#include "firm/rules.hpp"

namespace firm {

struct Itemset {
    std::vector<Literal> literals;  // sorted, one per column
    double fcov = 0.0;

    friend bool operator==(const Itemset&, const Itemset&) = default;
};

struct MinerConfig {
    OperatorPair pair{TNormSpec::lukasiewicz(), ImplicationSpec::ip(kDefaultP)};
    double min_cov = 0.3;
    double min_supp = 0.3;
    double min_conf = 0.8;
    unsigned max_itemset_size = 4;
    bool prune_redundant = true;
    std::optional<std::string> target_column;
    /// Worker threads (0 = hardware concurrency). Does not affect results.
    unsigned threads = 1;

    /// Throws ConfigError: min_cov in (0,1], min_supp and min_conf in [0,1],
    /// max_itemset_size >= 1, valid pair.
    void validate() const;
};

struct ScoredRule {
    Rule rule;
    QualityReport quality;
};

struct Provenance {
    MinerConfig config;
    std::string mode = "fuzzy";
    std::string dataset_fingerprint;
    std::size_t rows = 0;
    std::size_t dropped_rows = 0;
    std::vector<std::string> warnings;
};

/// Rules ordered by fsupp desc, fconf desc, rule text asc.
struct RuleSet {
    Vocabulary vocabulary;
    std::vector<ScoredRule> rules;
    Provenance provenance;

    /// Restores the canonical order.
    void sort();
    double mean_fcov() const;
    double mean_fsupp() const;
    double mean_fconf() const;
};

/// Itemsets of size <= max_size whose coverage under `tnorm` is at least
/// min_cov, by size then literal order. Candidates join frequent (k-1)-sets
/// sharing a (k-2)-prefix and must have every (k-1)-subset frequent.
std::vector<Itemset> frequent_itemsets(const MembershipMatrix& m, const TNormSpec& tnorm, double min_cov,
                                       unsigned max_size, unsigned threads = 1);

/// Uses each itemset smaller than max_itemset_size as an antecedent and pairs
/// it with every literal on another column as consequent (only the target
/// column when set); keeps rules meeting min_supp and min_conf. With
/// `support_pruning`, a rule is skipped when a one-literal-smaller antecedent
/// with the same consequent already failed min_supp; only sound when the pair
/// satisfies MTC.
RuleSet generate_rules(const std::vector<Itemset>& itemsets, const MembershipMatrix& m,
                       const MinerConfig& config, bool support_pruning = false);

/// Drops a rule when a rule with the same consequent, a strictly smaller
/// antecedent and at least the same confidence is present.
RuleSet prune_redundant(RuleSet ruleset);

/// fuzzify -> frequent_itemsets (antecedents up to max_itemset_size - 1
/// literals) -> generate_rules -> prune_redundant.
/// A pair failing MTC on the default grid is mined without support pruning
/// and flagged in the provenance warnings.
RuleSet mine(const MembershipMatrix& m, const MinerConfig& config);
RuleSet mine(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions, const MinerConfig& config);

inline constexpr std::size_t kBruteForceLiteralLimit = 20;

/// Exhaustive reference miner with the same contract as mine. Throws
/// UsageError beyond kBruteForceLiteralLimit literals.
RuleSet brute_force_mine(const MembershipMatrix& m, const MinerConfig& config);
RuleSet brute_force_mine(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions,
                         const MinerConfig& config);

void to_json(nlohmann::json& j, const MinerConfig& config);
void to_json(nlohmann::json& j, const RuleSet& ruleset);
/// Reads the JSON written by to_json. Throws InputError on malformed input.
RuleSet ruleset_from_json(const nlohmann::json& j);

/// antecedent,consequent,fcov,fsupp,fconf,fwracc
void write_rules_csv(std::ostream& out, const RuleSet& ruleset);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace firm
