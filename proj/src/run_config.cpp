#include "firm/run_config.hpp"

#include <fstream>

#include "firm/errors.hpp"

namespace firm {

OperatorPair PairChoice::resolve() const {
    OperatorPair pair;
    if (explicit_pair && !shorthand) {
        pair = *explicit_pair;
        if (lambda) {
            if (pair.tnorm.lambda) pair.tnorm.lambda = lambda;
            if (pair.implication.lambda) pair.implication.lambda = lambda;
        }
        if (p && pair.implication.p) pair.implication.p = p;
    } else {
        pair = pair_from_shorthand(shorthand.value_or("tlk-ip"), lambda.value_or(kDefaultLambda),
                                   p.value_or(kDefaultP));
    }
    pair.validate();
    return pair;
}

void RunConfig::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(min_cov) || !in_unit(min_supp) || !in_unit(min_conf)) {
        throw ConfigError("thresholds must lie in (0, 1]");
    }
    if (max_itemset_size < 1) throw ConfigError("max itemset size must be at least 1");
    pair.resolve();
}

MinerConfig RunConfig::miner_config() const {
    MinerConfig c;
    c.pair = pair.resolve();
    c.min_cov = min_cov;
    c.min_supp = min_supp;
    c.min_conf = min_conf;
    c.max_itemset_size = max_itemset_size;
    c.prune_redundant = prune;
    c.target_column = target_column;
    c.threads = threads;
    return c;
}

std::vector<FuzzyPartition> RunConfig::resolve_partitions(const Dataset& dataset) const {
    auto result = default_partitions(dataset, mode == RunMode::Crisp);
    for (const auto& custom : partitions) {
        bool replaced = false;
        for (auto& p : result) {
            if (p.variable() != custom.variable()) continue;
            p = (mode == RunMode::Crisp && custom.is_triangular()) ? crispify(custom) : custom;
            replaced = true;
        }
        if (!replaced) throw ConfigError("custom partition for unknown column '" + custom.variable() + "'");
    }
    return result;
}

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

std::filesystem::path resolve_path(const std::string& ref, const std::filesystem::path& base_dir) {
    std::filesystem::path p(ref);
    return (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
}

ColumnKind parse_kind(const std::string& s) {
    if (s == "numeric") return ColumnKind::Numeric;
    if (s == "categorical") return ColumnKind::Categorical;
    throw ConfigError("column kind must be 'numeric' or 'categorical', got '" + s + "'");
}

void read_partitions(const nlohmann::json& j, const std::filesystem::path& base_dir,
                     std::vector<FuzzyPartition>& out) {
    if (j.is_string()) {
        const auto path = resolve_path(j.get<std::string>(), base_dir);
        read_partitions(read_json_file(path), path.parent_path(), out);
    } else if (j.is_array()) {
        for (const auto& entry : j) read_partitions(entry, base_dir, out);
    } else if (j.is_object()) {
        out.push_back(partition_from_json(j));
    } else {
        throw ConfigError("'partitions' must be a file name, an object or a list");
    }
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("run configuration must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("input")) c.input = resolve_path(j.at("input").get<std::string>(), base_dir).string();
        if (j.contains("schema_overrides")) {
            for (const auto& [name, kind] : j.at("schema_overrides").items()) {
                c.schema_overrides[name] = parse_kind(kind.get<std::string>());
            }
        }
        if (j.contains("partitions")) read_partitions(j.at("partitions"), base_dir, c.partitions);
        if (j.contains("pair")) {
            const auto& pj = j.at("pair");
            if (pj.is_string()) {
                c.pair.shorthand = pj.get<std::string>();
            } else {
                c.pair.shorthand.reset();
                c.pair.explicit_pair = pj.get<OperatorPair>();
            }
        }
        if (j.contains("lambda")) c.pair.lambda = j.at("lambda").get<double>();
        if (j.contains("p")) c.pair.p = j.at("p").get<double>();
        if (j.contains("thresholds")) {
            const auto& t = j.at("thresholds");
            c.min_cov = t.value("min_cov", c.min_cov);
            c.min_supp = t.value("min_supp", c.min_supp);
            c.min_conf = t.value("min_conf", c.min_conf);
        }
        c.max_itemset_size = j.value("max_itemset_size", c.max_itemset_size);
        c.prune = j.value("prune", c.prune);
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "fuzzy") {
                c.mode = RunMode::Fuzzy;
            } else if (mode == "crisp") {
                c.mode = RunMode::Crisp;
            } else {
                throw ConfigError("mode must be 'fuzzy' or 'crisp'");
            }
        }
        if (j.contains("target_column") && !j.at("target_column").is_null()) {
            c.target_column = j.at("target_column").get<std::string>();
        }
        c.seed = j.value("seed", c.seed);
        if (j.contains("output")) c.output = resolve_path(j.at("output").get<std::string>(), base_dir).string();
        if (j.contains("format")) {
            const auto format = j.at("format").get<std::string>();
            if (format == "json") {
                c.format = OutputFormat::Json;
            } else if (format == "csv") {
                c.format = OutputFormat::Csv;
            } else {
                throw ConfigError("format must be 'json' or 'csv'");
            }
        }
        c.threads = j.value("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid run configuration: ") + e.what());
    }
    if (c.pair.shorthand == "crisp") c.mode = RunMode::Crisp;
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return run_config_from_json(read_json_file(path), path.parent_path());
}

}  // namespace firm
