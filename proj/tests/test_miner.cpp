#include <doctest.h>

#include <set>
#include <sstream>

#include "firm/analysis.hpp"
#include "firm/errors.hpp"
#include "firm/miner.hpp"
#include "support.hpp"

using namespace firm;
using firm::test::Gen;

namespace {

const std::string kIris = std::string(FIRM_DATA_DIR) + "/iris.csv";

// Independent enumeration of every column-distinct itemset with its coverage.
std::set<std::vector<Literal>> oracle_itemsets(const MembershipMatrix& m, const TNormSpec& t, double min_cov,
                                               unsigned max_size) {
    std::set<std::vector<Literal>> out;
    const auto& lits = m.literals();
    const std::size_t n = lits.size();
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::vector<Literal> set;
        std::set<std::uint32_t> cols;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            ok = cols.insert(lits[i].column).second;
            set.push_back(lits[i]);
        }
        if (!ok || set.size() > max_size) continue;
        double total = 0;
        for (std::size_t d = 0; d < m.rows(); ++d) {
            double v = 1.0;
            for (const auto& l : set) v = tnorm(t, v, m.at(d, l));
            total += v;
        }
        if (total / static_cast<double>(m.rows()) >= min_cov) out.insert(set);
    }
    return out;
}

std::set<std::string> texts(const RuleSet& rs) {
    std::set<std::string> out;
    for (const auto& r : rs.rules) out.insert(r.rule.text(rs.vocabulary));
    return out;
}

ScoredRule scored(std::vector<Literal> ant, Literal con, double supp, double conf) {
    return {Rule(std::move(ant), con), QualityReport{supp / conf, supp, conf, 0.0, false}};
}

}  // namespace

TEST_SUITE("miner") {

TEST_CASE("config validation") {
    MinerConfig c;
    CHECK_NOTHROW(c.validate());
    c.min_cov = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = MinerConfig{};
    c.min_supp = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = MinerConfig{};
    c.min_conf = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = MinerConfig{};
    c.max_itemset_size = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    Gen g(1);
    const auto m = firm::test::random_matrix(g, 5, 2, 2);
    CHECK_THROWS_AS(frequent_itemsets(m, TNormSpec::product(), 0.0, 3), ConfigError);
    c = MinerConfig{};
    c.target_column = "missing";
    CHECK_THROWS_AS(mine(m, c), ConfigError);
}

TEST_CASE("frequent itemsets equal brute-force enumeration") {
    Gen g(23);
    for (const auto& t : {TNormSpec::minimum(), TNormSpec::product(), TNormSpec::lukasiewicz()}) {
        for (int trial = 0; trial < 10; ++trial) {
            // 6 literals: three variables with two labels each.
            const auto m = firm::test::random_matrix(g, 20, 3, 2);
            const double min_cov = g.range(0.05, 0.5);
            const auto found = frequent_itemsets(m, t, min_cov, 3);
            std::set<std::vector<Literal>> got;
            for (const auto& s : found) {
                got.insert(s.literals);
                CHECK(std::is_sorted(s.literals.begin(), s.literals.end()));
            }
            CHECK(got.size() == found.size());
            CHECK(got == oracle_itemsets(m, t, min_cov, 3));
        }
    }
}

TEST_CASE("itemset coverage and downward closure") {
    Gen g(29);
    const auto m = firm::test::random_matrix(g, 40, 4, 3);
    const auto found = frequent_itemsets(m, TNormSpec::product(), 0.1, 4);
    std::set<std::vector<Literal>> all;
    for (const auto& s : found) all.insert(s.literals);
    for (const auto& s : found) {
        std::vector<double> values(s.literals.size());
        double total = 0;
        for (std::size_t d = 0; d < m.rows(); ++d) {
            for (std::size_t i = 0; i < values.size(); ++i) values[i] = m.at(d, s.literals[i]);
            total += tnorm_nary(TNormSpec::product(), values);
        }
        CHECK(s.fcov == doctest::Approx(total / 40).epsilon(1e-13));
        for (std::size_t skip = 0; s.literals.size() > 1 && skip < s.literals.size(); ++skip) {
            auto sub = s.literals;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
            CHECK(all.count(sub) == 1);
        }
    }
    // Singletons above threshold all appear.
    for (std::size_t l = 0; l < m.literal_count(); ++l) {
        double total = 0;
        for (double v : m.column(l)) total += v;
        CHECK((total / 40 >= 0.1) == (all.count({m.literals()[l]}) == 1));
    }
}

TEST_CASE("both directions of a two-literal itemset are scored") {
    const Vocabulary v{{"a", "b"}, {{"L"}, {"L"}}};
    const MembershipMatrix m(v, 4, {1, 1, 0.5, 0.5, 1, 1, 1, 0.5});
    MinerConfig c;
    c.pair = {TNormSpec::minimum(), ImplicationSpec::godel()};
    c.min_supp = 0.0;
    c.min_conf = 0.0;
    c.prune_redundant = false;
    const auto rs = mine(m, c);
    CHECK(texts(rs) == std::set<std::string>{"IF a=L THEN b=L", "IF b=L THEN a=L"});
    // min{x,y} is symmetric, so supports match; confidences do not.
    CHECK(rs.rules[0].quality.fsupp == rs.rules[1].quality.fsupp);
    CHECK(rs.rules[0].quality.fconf != rs.rules[1].quality.fconf);
}

TEST_CASE("redundancy pruning") {
    RuleSet rs;
    rs.vocabulary = {{"A", "B", "C"}, {{"L"}, {"L"}, {"L"}}};
    rs.rules = {scored({{0, 0}}, {2, 0}, 0.5, 0.9), scored({{0, 0}, {1, 0}}, {2, 0}, 0.4, 0.85)};
    rs.sort();
    auto pruned = prune_redundant(rs);
    CHECK(texts(pruned) == std::set<std::string>{"IF A=L THEN C=L"});

    rs.rules = {scored({{0, 0}}, {2, 0}, 0.5, 0.8), scored({{0, 0}, {1, 0}}, {2, 0}, 0.4, 0.9)};
    rs.sort();
    CHECK(prune_redundant(rs).rules.size() == 2);

    // Ties go to the general rule.
    rs.rules = {scored({{0, 0}}, {2, 0}, 0.5, 0.9), scored({{0, 0}, {1, 0}}, {2, 0}, 0.4, 0.9)};
    CHECK(prune_redundant(rs).rules.size() == 1);

    // Different consequents never prune each other.
    rs.rules = {scored({{0, 0}}, {2, 0}, 0.5, 0.9), scored({{0, 0}, {2, 0}}, {1, 0}, 0.4, 0.5)};
    CHECK(prune_redundant(rs).rules.size() == 2);

    rs.rules.clear();
    CHECK(prune_redundant(rs).rules.empty());
}

TEST_CASE("pruning keeps canonical order") {
    const auto ds = load_csv(kIris);
    MinerConfig c;
    c.prune_redundant = false;
    const auto full = mine(ds, default_partitions(ds), c);
    const auto pruned = prune_redundant(full);
    auto resorted = pruned;
    resorted.sort();
    REQUIRE(pruned.rules.size() == resorted.rules.size());
    for (std::size_t i = 0; i < pruned.rules.size(); ++i) CHECK(pruned.rules[i].rule == resorted.rules[i].rule);
}

TEST_CASE("mine agrees with the brute-force miner") {
    Gen g(31);
    auto pairs = firm::test::registry_pairs();
    pairs.push_back({TNormSpec::product(), ImplicationSpec::goguen()});
    for (const auto& pair : pairs) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto m = firm::test::random_matrix(g, 25, 4, 2);
            MinerConfig c;
            c.pair = pair;
            c.min_cov = g.range(0.1, 0.4);
            c.min_supp = g.range(0.0, 0.3);
            c.min_conf = g.range(0.3, 0.9);
            c.max_itemset_size = 2 + static_cast<unsigned>(g.below(3));
            c.prune_redundant = g.coin();
            if (g.below(4) == 0) c.target_column = "v1";
            const auto fast = mine(m, c);
            const auto slow = brute_force_mine(m, c);
            REQUIRE_MESSAGE(fast.rules.size() == slow.rules.size(), pair.label());
            for (std::size_t i = 0; i < fast.rules.size(); ++i) {
                CHECK(fast.rules[i].rule == slow.rules[i].rule);
                CHECK(fast.rules[i].quality == slow.rules[i].quality);
            }
        }
    }
}

TEST_CASE("brute force literal limit") {
    Gen g(2);
    const auto m = firm::test::random_matrix(g, 3, 7, 3);
    CHECK_THROWS_AS(brute_force_mine(m, MinerConfig{}), UsageError);
}

TEST_CASE("rules obey the thresholds and shape constraints") {
    const auto ds = load_csv(kIris);
    MinerConfig c;
    c.prune_redundant = false;
    const auto rs = mine(ds, default_partitions(ds), c);
    std::set<Rule> seen;
    for (const auto& r : rs.rules) {
        CHECK(r.quality.fcov >= c.min_cov);
        CHECK(r.quality.fsupp >= c.min_supp);
        CHECK(r.quality.fconf >= c.min_conf);
        CHECK(r.rule.antecedent().size() + 1 <= c.max_itemset_size);
        CHECK(seen.insert(r.rule).second);
    }
    for (std::size_t i = 1; i < rs.rules.size(); ++i) {
        const auto& a = rs.rules[i - 1].quality;
        const auto& b = rs.rules[i].quality;
        CHECK((a.fsupp > b.fsupp || (a.fsupp == b.fsupp && a.fconf >= b.fconf)));
    }
}

TEST_CASE("target column restricts consequents") {
    const auto ds = load_csv(kIris);
    MinerConfig c;
    c.target_column = "class";
    c.min_cov = 0.2;
    c.min_supp = 0.2;
    c.min_conf = 0.5;
    const auto rs = mine(ds, default_partitions(ds), c);
    REQUIRE_FALSE(rs.rules.empty());
    for (const auto& r : rs.rules) CHECK(rs.vocabulary.variables[r.rule.consequent().column] == "class");
}

TEST_CASE("no refined rule out-supports its emitted generalization under MTC") {
    const auto ds = load_csv(kIris);
    for (const auto& pair : adequate_pairs()) {
        MinerConfig c;
        c.pair = pair;
        c.prune_redundant = false;
        const auto rs = mine(ds, default_partitions(ds), c);
        for (const auto& r : rs.rules) {
            for (const auto& g : rs.rules) {
                if (is_refinement(g.rule, r.rule)) CHECK(r.quality.fsupp <= g.quality.fsupp + 1e-12);
            }
        }
    }
}

TEST_CASE("pairs failing MTC are flagged and mined without support pruning") {
    Gen g(37);
    const auto m = firm::test::random_matrix(g, 30, 4, 2);
    MinerConfig c;
    c.pair = {TNormSpec::minimum(), ImplicationSpec::goguen()};
    c.min_cov = 0.1;
    c.min_supp = 0.1;
    c.min_conf = 0.3;
    const auto rs = mine(m, c);
    REQUIRE(rs.provenance.warnings.size() == 1);
    CHECK(rs.provenance.warnings[0].find("non-adequate pair") != std::string::npos);
    const auto oracle = brute_force_mine(m, c);
    CHECK(texts(rs) == texts(oracle));

    c.pair = {TNormSpec::product(), ImplicationSpec::yager_iy()};
    CHECK(mine(m, c).provenance.warnings.empty());
}

TEST_CASE("thread count does not change results") {
    const auto ds = load_csv(kIris);
    MinerConfig c;
    c.min_cov = 0.15;
    c.threads = 1;
    const auto one = nlohmann::json(mine(ds, default_partitions(ds), c)).dump();
    c.threads = 8;
    CHECK(nlohmann::json(mine(ds, default_partitions(ds), c)).dump() == one);
}

TEST_CASE("iris with the default pair") {
    const auto ds = load_csv(kIris);
    const auto rs = mine(ds, default_partitions(ds), MinerConfig{});
    // Frozen from an independent numpy evaluation of the same definitions.
    CHECK(rs.rules.size() == 40);
    CHECK(rs.mean_fcov() == doctest::Approx(0.4031039800995025).epsilon(1e-12));
    CHECK(rs.mean_fsupp() == doctest::Approx(0.39480321593319356).epsilon(1e-12));
    CHECK(rs.mean_fconf() == doctest::Approx(0.9805188588491515).epsilon(1e-12));
    CHECK(rs.provenance.rows == 150);
    CHECK(rs.provenance.dataset_fingerprint == ds.fingerprint);
}

TEST_CASE("rule set json round trip and csv") {
    const auto ds = load_csv(kIris);
    const auto rs = mine(ds, default_partitions(ds), MinerConfig{});
    const nlohmann::json j = rs;
    CHECK_FALSE(j["provenance"]["config"].contains("threads"));
    CHECK(j["provenance"]["config"]["pair"]["implication"]["p"] == 0.01);
    CHECK(j["rules"][0]["antecedent"][0].contains("variable"));
    const auto back = ruleset_from_json(j);
    REQUIRE(back.rules.size() == rs.rules.size());
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        CHECK(back.rules[i].rule == rs.rules[i].rule);
        CHECK(back.rules[i].quality == rs.rules[i].quality);
    }
    CHECK(back.vocabulary == rs.vocabulary);
    CHECK_THROWS_AS(ruleset_from_json(nlohmann::json::object()), InputError);

    std::ostringstream csv;
    write_rules_csv(csv, rs);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "antecedent,consequent,fcov,fsupp,fconf,fwracc");
    std::size_t count = 0;
    for (std::string line; std::getline(lines, line);) ++count;
    CHECK(count == rs.rules.size());
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
}

}  // TEST_SUITE
