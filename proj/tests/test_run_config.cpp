#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "firm/errors.hpp"
#include "firm/miner.hpp"
#include "firm/run_config.hpp"

using namespace firm;
namespace fs = std::filesystem;

namespace {

const std::string kIris = std::string(FIRM_DATA_DIR) + "/iris.csv";

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("firm_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("run_config") {

TEST_CASE("defaults") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    const auto m = c.miner_config();
    CHECK(m.pair == OperatorPair{TNormSpec::lukasiewicz(), ImplicationSpec::ip(0.01)});
    CHECK(m.min_cov == 0.3);
    CHECK(m.min_conf == 0.8);
    CHECK(m.max_itemset_size == 4);
    CHECK(m.prune_redundant);
}

TEST_CASE("threshold and pair validation") {
    RunConfig c;
    c.min_supp = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = RunConfig{};
    c.min_conf = 1.2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = RunConfig{};
    c.pair.shorthand = "tss-kss";
    c.pair.lambda = 0.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.pair.lambda = -2.0;
    CHECK(c.miner_config().pair.implication.lambda == -2.0);
}

TEST_CASE("json configuration") {
    const auto dir = scratch_dir("config");
    {
        std::ofstream parts(dir / "parts.json");
        parts << R"([{"variable":"sepal_length","labels":[
            {"name":"Short","kind":"triangular","a":4,"b":4,"c":6},
            {"name":"Long","kind":"triangular","a":4,"b":8,"c":8}]}])";
    }
    const auto j = nlohmann::json::parse(R"({
        "input": "data.csv",
        "schema_overrides": {"class": "categorical"},
        "partitions": "parts.json",
        "pair": {"tnorm": {"kind": "schweizer_sklar", "lambda": -2},
                 "implication": {"kind": "schweizer_sklar_k", "lambda": -2}},
        "lambda": -3,
        "thresholds": {"min_cov": 0.2, "min_supp": 0.25, "min_conf": 0.7},
        "max_itemset_size": 3,
        "prune": false,
        "mode": "fuzzy",
        "target_column": "class",
        "seed": 7,
        "output": "out.json",
        "format": "csv",
        "threads": 2
    })");
    const auto c = run_config_from_json(j, dir);
    CHECK(c.input == (dir / "data.csv").string());
    CHECK(c.schema_overrides.at("class") == ColumnKind::Categorical);
    REQUIRE(c.partitions.size() == 1);
    CHECK(c.partitions[0].labels()[1].name == "Long");
    const auto pair = c.pair.resolve();
    CHECK(pair.tnorm.lambda == -3.0);
    CHECK(pair.implication.lambda == -3.0);
    CHECK(c.min_cov == 0.2);
    CHECK(c.max_itemset_size == 3);
    CHECK_FALSE(c.prune);
    CHECK(c.target_column == std::optional<std::string>("class"));
    CHECK(c.seed == 7);
    CHECK(c.format == OutputFormat::Csv);
    CHECK(c.threads == 2);

    const auto ds = load_csv(kIris);
    const auto resolved = c.resolve_partitions(ds);
    CHECK(resolved[0].size() == 2);
    CHECK(resolved[1].size() == 3);
}

TEST_CASE("json configuration errors") {
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::array()), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"mode", "fast"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"format", "xml"}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"thresholds", {{"min_cov", "high"}}}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"schema_overrides", {{"a", "date"}}}}), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"partitions", 3}}), ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/run.json"), ConfigError);

    RunConfig c;
    c.partitions.push_back(build_numeric_partition("nope", {1, 2, 3}));
    CHECK_THROWS_AS(c.resolve_partitions(load_csv(kIris)), ConfigError);
}

TEST_CASE("crisp mode") {
    const auto c = run_config_from_json(nlohmann::json{{"pair", "crisp"}});
    CHECK(c.mode == RunMode::Crisp);
    const auto ds = load_csv(kIris);
    const auto parts = c.resolve_partitions(ds);
    for (const auto& p : parts) CHECK_FALSE(p.is_triangular());

    // 0/1 memberships make every t-norm agree, so the mined rules coincide.
    const auto m = fuzzify(ds, parts);
    MinerConfig base = c.miner_config();
    const auto reference = mine(m, base);
    for (const auto& t : {TNormSpec::minimum(), TNormSpec::lukasiewicz(), TNormSpec::schweizer_sklar(-1)}) {
        MinerConfig other = base;
        other.pair.tnorm = t;
        const auto rs = mine(m, other);
        REQUIRE(rs.rules.size() == reference.rules.size());
        for (std::size_t i = 0; i < rs.rules.size(); ++i) {
            CHECK(rs.rules[i].rule == reference.rules[i].rule);
            CHECK(rs.rules[i].quality == reference.rules[i].quality);
        }
    }
    for (const auto& r : reference.rules) {
        CHECK(r.quality.fsupp * 150 == doctest::Approx(std::round(r.quality.fsupp * 150)));
    }
}

}  // TEST_SUITE
