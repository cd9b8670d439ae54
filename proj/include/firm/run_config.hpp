#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "firm/data.hpp"
#include "firm/miner.hpp"
#include "firm/operators.hpp"
#include "firm/partitions.hpp"

namespace firm {

enum class RunMode { Fuzzy, Crisp };
enum class OutputFormat { Json, Csv };

/// Operator pair as written in a run configuration: either a shorthand
/// (tp-iy, tlk-ip, ...) with lambda/p, or an explicit pair.
struct PairChoice {
    std::optional<std::string> shorthand;
    std::optional<OperatorPair> explicit_pair;
    std::optional<double> lambda;
    std::optional<double> p;

    /// Throws ConfigError for unknown shorthands or bad parameters.
    OperatorPair resolve() const;
};

/// Settings of one mining run, loaded from JSON and overridden by flags.
struct RunConfig {
    std::string input;
    std::map<std::string, ColumnKind> schema_overrides;
    std::vector<FuzzyPartition> partitions;  // custom; replace the defaults per variable
    PairChoice pair{std::string("tlk-ip"), std::nullopt, std::nullopt, std::nullopt};
    double min_cov = 0.3;
    double min_supp = 0.3;
    double min_conf = 0.8;
    unsigned max_itemset_size = 4;
    bool prune = true;
    RunMode mode = RunMode::Fuzzy;
    std::optional<std::string> target_column;
    std::uint64_t seed = 42;
    std::string output;
    OutputFormat format = OutputFormat::Json;
    unsigned threads = 0;
    std::string dump_mu;

    /// Thresholds must lie in (0,1]. Throws ConfigError.
    void validate() const;
    MinerConfig miner_config() const;

    /// Defaults for every column, replaced by custom partitions where given;
    /// crispified in crisp mode.
    std::vector<FuzzyPartition> resolve_partitions(const Dataset& dataset) const;
};

/// Relative file references resolve against `base_dir`. Throws ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace firm
