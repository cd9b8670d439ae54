#include "firm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "firm/errors.hpp"
#include "firm/numeric.hpp"
#include "firm/parallel.hpp"

namespace firm {

namespace {

using NamedLiteral = std::pair<std::string, std::string>;

struct RuleKey {
    std::vector<NamedLiteral> antecedent;
    NamedLiteral consequent;
    friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
};

std::set<NamedLiteral> vocabulary_set(const Vocabulary& v) {
    std::set<NamedLiteral> out;
    for (std::size_t c = 0; c < v.variables.size(); ++c) {
        for (const auto& l : v.labels[c]) out.emplace(v.variables[c], l);
    }
    return out;
}

std::set<RuleKey> rule_keys(const RuleSet& rs) {
    auto named = [&](const Literal& l) {
        return NamedLiteral{rs.vocabulary.variables.at(l.column), rs.vocabulary.labels.at(l.column).at(l.label)};
    };
    std::set<RuleKey> keys;
    for (const auto& r : rs.rules) {
        RuleKey key{{}, named(r.rule.consequent())};
        for (const auto& l : r.rule.antecedent()) key.antecedent.push_back(named(l));
        std::sort(key.antecedent.begin(), key.antecedent.end());
        keys.insert(std::move(key));
    }
    return keys;
}

}  // namespace

SimilarityResult similarity(const RuleSet& first, const RuleSet& second) {
    if (vocabulary_set(first.vocabulary) != vocabulary_set(second.vocabulary)) {
        throw UsageError("rule sets use different variable/label vocabularies");
    }
    const auto a = rule_keys(first);
    const auto b = rule_keys(second);
    SimilarityResult out;
    for (const auto& k : a) out.intersection_size += b.count(k);
    out.union_size = a.size() + b.size() - out.intersection_size;
    out.percent = out.union_size == 0
                      ? 100.0
                      : 100.0 * static_cast<double>(out.intersection_size) / static_cast<double>(out.union_size);
    return out;
}

Dataset gen_synthetic_ab(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw UsageError("synthetic dataset needs at least one row");
    std::mt19937_64 rng(seed);
    Column a{"A", ColumnKind::Numeric, {}, {}};
    Column b{"B", ColumnKind::Numeric, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double av = 100.0 * unit_from_bits(rng());
        const double u = unit_from_bits(rng());
        a.numeric.push_back(av);
        b.numeric.push_back(av <= 70.0 ? 100.0 * u : 70.0 + 30.0 * u);
    }
    Dataset ds;
    ds.columns = {std::move(a), std::move(b)};
    ds.row_count = n;
    ds.fingerprint = "synthetic-ab:" + std::string(kSyntheticGenerator) + ":n=" + std::to_string(n) +
                     ":seed=" + std::to_string(seed);
    return ds;
}

OperatorPair sweep_pair(SweepFamily family, double value) {
    if (family == SweepFamily::SchweizerSklar) {
        return {TNormSpec::schweizer_sklar(value), ImplicationSpec::schweizer_sklar_k(value)};
    }
    return {TNormSpec::lukasiewicz(), ImplicationSpec::ip(value)};
}

std::vector<SweepRow> param_sweep(SweepFamily family, const std::vector<double>& values, const Dataset& dataset,
                                  const std::vector<FuzzyPartition>& partitions, unsigned threads) {
    std::vector<OperatorPair> pairs;
    for (double v : values) pairs.push_back(sweep_pair(family, v));

    const auto m = fuzzify(dataset, partitions);
    const Literal a_high = m.vocabulary().find("A", "High");
    const Literal b_high = m.vocabulary().find("B", "High");
    const Rule a_to_b({a_high}, b_high);
    const Rule b_to_a({b_high}, a_high);

    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), resolve_threads(threads), [&](std::size_t i) {
        const auto ab = quality(a_to_b, pairs[i], m);
        const auto ba = quality(b_to_a, pairs[i], m);
        rows[i] = {values[i], {ab.fsupp, ab.fconf}, {ba.fsupp, ba.fconf}};
    });
    return rows;
}

std::vector<ThresholdRow> threshold_sweep(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions,
                                          const MinerConfig& base, const std::vector<double>& cov_values) {
    for (double c : cov_values) {
        if (!(c > 0.0)) throw ConfigError("coverage thresholds must be positive");
    }
    const auto m = fuzzify(dataset, partitions);
    std::vector<ThresholdRow> out;
    for (double cov : cov_values) {
        MinerConfig config = base;
        config.min_cov = cov;
        const RuleSet rs = mine(m, config);

        ThresholdRow row{cov, rs.rules.size(), 0.0, 0.0};
        if (!rs.rules.empty()) {
            // rs is in canonical order; a stable sort by confidence keeps it
            // as the tie-break.
            std::vector<const ScoredRule*> ranked;
            for (const auto& r : rs.rules) ranked.push_back(&r);
            std::stable_sort(ranked.begin(), ranked.end(), [](const ScoredRule* l, const ScoredRule* r) {
                return l->quality.fconf > r->quality.fconf;
            });
            const std::size_t top = (ranked.size() + 4) / 5;  // ceil(20%)
            std::vector<double> conf, supp;
            for (std::size_t i = 0; i < top; ++i) {
                conf.push_back(ranked[i]->quality.fconf);
                supp.push_back(ranked[i]->quality.fsupp);
            }
            row.mean_conf_top20 = pairwise_sum(conf) / static_cast<double>(top);
            row.mean_supp_top20 = pairwise_sum(supp) / static_cast<double>(top);
        }
        out.push_back(row);
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param,supp_ab,conf_ab,supp_ba,conf_ba\n";
    for (const auto& r : rows) {
        out << format_double(r.param_value) << ',' << format_double(r.a_to_b.fsupp) << ','
            << format_double(r.a_to_b.fconf) << ',' << format_double(r.b_to_a.fsupp) << ','
            << format_double(r.b_to_a.fconf) << '\n';
    }
}

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows) {
    out << "min_cov,n_rules,mean_conf_top20,mean_supp_top20\n";
    for (const auto& r : rows) {
        out << format_double(r.min_cov) << ',' << r.n_rules << ',' << format_double(r.mean_conf_top20) << ','
            << format_double(r.mean_supp_top20) << '\n';
    }
}

}  // namespace firm
