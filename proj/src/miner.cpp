#include "firm/miner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

#include "firm/errors.hpp"
#include "firm/numeric.hpp"
#include "firm/parallel.hpp"

namespace firm {

void MinerConfig::validate() const {
    pair.validate();
    if (!(min_cov > 0.0 && min_cov <= 1.0)) throw ConfigError("min_cov must be in (0, 1]");
    if (!(min_supp >= 0.0 && min_supp <= 1.0)) throw ConfigError("min_supp must be in [0, 1]");
    if (!(min_conf >= 0.0 && min_conf <= 1.0)) throw ConfigError("min_conf must be in [0, 1]");
    if (max_itemset_size < 1) throw ConfigError("max_itemset_size must be at least 1");
    if (target_column && target_column->empty()) throw ConfigError("target column name is empty");
}

void RuleSet::sort() {
    std::vector<std::pair<std::string, ScoredRule>> keyed;
    keyed.reserve(rules.size());
    for (auto& r : rules) keyed.emplace_back(r.rule.text(vocabulary), std::move(r));
    std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) {
        if (l.second.quality.fsupp != r.second.quality.fsupp) return l.second.quality.fsupp > r.second.quality.fsupp;
        if (l.second.quality.fconf != r.second.quality.fconf) return l.second.quality.fconf > r.second.quality.fconf;
        return l.first < r.first;
    });
    rules.clear();
    for (auto& [text, r] : keyed) rules.push_back(std::move(r));
}

namespace {

template <typename Field>
double mean_of(const std::vector<ScoredRule>& rules, Field field) {
    if (rules.empty()) return 0.0;
    std::vector<double> values;
    values.reserve(rules.size());
    for (const auto& r : rules) values.push_back(field(r.quality));
    return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

double RuleSet::mean_fcov() const { return mean_of(rules, [](const QualityReport& q) { return q.fcov; }); }
double RuleSet::mean_fsupp() const { return mean_of(rules, [](const QualityReport& q) { return q.fsupp; }); }
double RuleSet::mean_fconf() const { return mean_of(rules, [](const QualityReport& q) { return q.fconf; }); }

std::vector<Itemset> frequent_itemsets(const MembershipMatrix& m, const TNormSpec& tnorm, double min_cov,
                                       unsigned max_size, unsigned threads) {
    tnorm.validate();
    if (!(min_cov > 0.0 && min_cov <= 1.0)) throw ConfigError("min_cov must be in (0, 1]");
    if (max_size < 1) throw ConfigError("max_itemset_size must be at least 1");
    if (m.rows() == 0) throw UsageError("membership matrix has no rows");
    threads = resolve_threads(threads);
    const double count = static_cast<double>(m.rows());

    struct Frontier {
        std::vector<Literal> literals;
        double fcov;
        std::vector<double> truth;  // antecedent truth per example
    };

    std::vector<Itemset> result;
    std::vector<Frontier> level;
    for (std::size_t l = 0; l < m.literal_count(); ++l) {
        const auto col = m.column(l);
        const double fcov = pairwise_sum(col) / count;
        if (fcov >= min_cov) level.push_back({{m.literals()[l]}, fcov, {col.begin(), col.end()}});
    }

    for (unsigned size = 1;; ++size) {
        for (const auto& f : level) result.push_back({f.literals, f.fcov});
        if (size >= max_size || level.size() < 2) break;

        std::set<std::vector<Literal>> frequent;
        for (const auto& f : level) frequent.insert(f.literals);

        // (parent index, extension literal); level is in lexicographic order.
        std::vector<std::pair<std::size_t, Literal>> candidates;
        for (std::size_t i = 0; i < level.size(); ++i) {
            const auto& a = level[i].literals;
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const auto& b = level[j].literals;
                if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
                if (a.back().column == b.back().column) continue;
                std::vector<Literal> joined = a;
                joined.push_back(b.back());
                bool all_frequent = true;
                std::vector<Literal> subset(joined.size() - 1);
                for (std::size_t skip = 0; skip + 2 < joined.size() && all_frequent; ++skip) {
                    std::copy(joined.begin(), joined.begin() + static_cast<std::ptrdiff_t>(skip), subset.begin());
                    std::copy(joined.begin() + static_cast<std::ptrdiff_t>(skip) + 1, joined.end(),
                              subset.begin() + static_cast<std::ptrdiff_t>(skip));
                    all_frequent = frequent.count(subset) > 0;
                }
                if (all_frequent) candidates.emplace_back(i, b.back());
            }
        }

        std::vector<Frontier> evaluated(candidates.size());
        parallel_for(candidates.size(), threads, [&](std::size_t c) {
            const auto& parent = level[candidates[c].first];
            const auto ext = m.column(candidates[c].second);
            Frontier f;
            f.literals = parent.literals;
            f.literals.push_back(candidates[c].second);
            f.truth.resize(m.rows());
            for (std::size_t d = 0; d < m.rows(); ++d) f.truth[d] = firm::tnorm(tnorm, parent.truth[d], ext[d]);
            f.fcov = pairwise_sum(f.truth) / count;
            evaluated[c] = std::move(f);
        });

        std::vector<Frontier> next;
        for (auto& f : evaluated) {
            if (f.fcov >= min_cov) next.push_back(std::move(f));
        }
        level = std::move(next);
        if (level.empty()) break;
    }
    return result;
}

namespace {

struct SplitKey {
    std::vector<Literal> antecedent;
    Literal consequent;
    friend auto operator<=>(const SplitKey&, const SplitKey&) = default;
};

std::optional<std::uint32_t> target_index(const MembershipMatrix& m, const MinerConfig& config) {
    if (!config.target_column) return std::nullopt;
    const auto& vars = m.vocabulary().variables;
    const auto it = std::find(vars.begin(), vars.end(), *config.target_column);
    if (it == vars.end()) throw ConfigError("target column '" + *config.target_column + "' not found");
    return static_cast<std::uint32_t>(it - vars.begin());
}

std::vector<double> antecedent_truth(const MembershipMatrix& m, const TNormSpec& tnorm,
                                     const std::vector<Literal>& antecedent) {
    std::vector<double> truth(m.rows());
    std::vector<std::span<const double>> cols;
    for (const auto& l : antecedent) cols.push_back(m.column(l));
    for (std::size_t d = 0; d < m.rows(); ++d) {
        double acc = cols.front()[d];
        for (std::size_t i = 1; i < cols.size(); ++i) acc = firm::tnorm(tnorm, acc, cols[i][d]);
        truth[d] = acc;
    }
    return truth;
}

bool passes(const QualityReport& q, const MinerConfig& config) {
    return q.fsupp >= config.min_supp && q.fconf >= config.min_conf;
}

}  // namespace

RuleSet generate_rules(const std::vector<Itemset>& itemsets, const MembershipMatrix& m, const MinerConfig& config,
                       bool support_pruning) {
    config.validate();
    const auto target = target_index(m, config);
    const unsigned threads = resolve_threads(config.threads);

    std::map<std::size_t, std::vector<const Itemset*>> by_size;
    for (const auto& s : itemsets) {
        if (!s.literals.empty() && s.literals.size() < config.max_itemset_size) {
            by_size[s.literals.size()].push_back(&s);
        }
    }

    RuleSet out;
    out.vocabulary = m.vocabulary();
    out.provenance.config = config;
    out.provenance.rows = m.rows();

    std::set<SplitKey> failed_support;  // rules of the previous level below min_supp
    for (const auto& [size, group] : by_size) {
        // Candidate consequents per antecedent, with the skip decision fixed up front.
        std::vector<std::vector<std::pair<Literal, bool>>> candidates(group.size());
        for (std::size_t a = 0; a < group.size(); ++a) {
            const auto& ant = group[a]->literals;
            for (const auto& con : m.literals()) {
                if (target && con.column != *target) continue;
                const bool same_column =
                    std::any_of(ant.begin(), ant.end(), [&](const Literal& l) { return l.column == con.column; });
                if (same_column) continue;
                bool skip = false;
                if (support_pruning && size > 1) {
                    for (std::size_t drop = 0; drop < ant.size() && !skip; ++drop) {
                        SplitKey general{{}, con};
                        for (std::size_t i = 0; i < ant.size(); ++i) {
                            if (i != drop) general.antecedent.push_back(ant[i]);
                        }
                        skip = failed_support.count(general) > 0;
                    }
                }
                candidates[a].emplace_back(con, skip);
            }
        }

        std::vector<std::vector<std::optional<QualityReport>>> scored(group.size());
        parallel_for(group.size(), threads, [&](std::size_t a) {
            scored[a].resize(candidates[a].size());
            if (candidates[a].empty()) return;
            const auto truth = antecedent_truth(m, config.pair.tnorm, group[a]->literals);
            for (std::size_t k = 0; k < candidates[a].size(); ++k) {
                if (candidates[a][k].second) continue;
                scored[a][k] = summarize(truth, m.column(candidates[a][k].first), config.pair);
            }
        });

        std::set<SplitKey> failed_now;
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t k = 0; k < candidates[a].size(); ++k) {
                const auto& q = scored[a][k];
                const Literal con = candidates[a][k].first;
                if (!q || q->fsupp < config.min_supp) {
                    failed_now.insert({group[a]->literals, con});
                    continue;
                }
                if (passes(*q, config)) out.rules.push_back({Rule(group[a]->literals, con), *q});
            }
        }
        failed_support = std::move(failed_now);
    }
    out.sort();
    return out;
}

RuleSet prune_redundant(RuleSet ruleset) {
    std::map<Literal, std::vector<std::size_t>> by_consequent;
    for (std::size_t i = 0; i < ruleset.rules.size(); ++i) {
        by_consequent[ruleset.rules[i].rule.consequent()].push_back(i);
    }
    std::vector<char> drop(ruleset.rules.size(), 0);
    for (const auto& [consequent, members] : by_consequent) {
        for (std::size_t r : members) {
            const auto& refined = ruleset.rules[r];
            for (std::size_t g : members) {
                const auto& general = ruleset.rules[g];
                if (is_refinement(general.rule, refined.rule) && general.quality.fconf >= refined.quality.fconf) {
                    drop[r] = 1;
                    break;
                }
            }
        }
    }
    std::vector<ScoredRule> kept;
    for (std::size_t i = 0; i < ruleset.rules.size(); ++i) {
        if (!drop[i]) kept.push_back(std::move(ruleset.rules[i]));
    }
    ruleset.rules = std::move(kept);
    return ruleset;
}

namespace {

// check_mtc is deterministic per pair, so verdicts are cached.
bool pair_has_mtc(const OperatorPair& pair) {
    static std::mutex mutex;
    static std::vector<std::pair<OperatorPair, bool>> cache;
    std::lock_guard lock(mutex);
    for (const auto& [p, ok] : cache) {
        if (p == pair) return ok;
    }
    const bool ok = check_mtc(pair, GridSpec{}).holds;
    cache.emplace_back(pair, ok);
    return ok;
}

}  // namespace

RuleSet mine(const MembershipMatrix& m, const MinerConfig& config) {
    config.validate();
    target_index(m, config);
    const bool adequate = pair_has_mtc(config.pair);
    std::vector<Itemset> antecedents;
    if (config.max_itemset_size > 1) {
        antecedents =
            frequent_itemsets(m, config.pair.tnorm, config.min_cov, config.max_itemset_size - 1, config.threads);
    }
    RuleSet out = generate_rules(antecedents, m, config, adequate);
    if (config.prune_redundant) out = prune_redundant(std::move(out));
    if (!adequate) {
        out.provenance.warnings.push_back("non-adequate pair " + config.pair.label() +
                                          ": MTC fails, support pruning disabled");
    }
    return out;
}

namespace {

void stamp(RuleSet& rs, const Dataset& dataset) {
    rs.provenance.dataset_fingerprint = dataset.fingerprint;
    rs.provenance.dropped_rows = dataset.dropped_rows;
}

}  // namespace

RuleSet mine(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions, const MinerConfig& config) {
    RuleSet rs = mine(fuzzify(dataset, partitions), config);
    stamp(rs, dataset);
    return rs;
}

RuleSet brute_force_mine(const MembershipMatrix& m, const MinerConfig& config) {
    config.validate();
    if (m.literal_count() > kBruteForceLiteralLimit) {
        throw UsageError("brute force mining is limited to " + std::to_string(kBruteForceLiteralLimit) +
                         " literals");
    }
    const auto target = target_index(m, config);
    const auto& vocab = m.vocabulary();

    RuleSet out;
    out.vocabulary = vocab;
    out.provenance.config = config;
    out.provenance.rows = m.rows();

    std::vector<Literal> chosen;
    auto consider = [&] {
        if (chosen.empty()) return;
        std::vector<double> truth(m.rows());
        std::vector<double> values(chosen.size());
        for (std::size_t d = 0; d < m.rows(); ++d) {
            for (std::size_t i = 0; i < chosen.size(); ++i) values[i] = m.at(d, chosen[i]);
            truth[d] = tnorm_nary(config.pair.tnorm, values);
        }
        if (pairwise_sum(truth) / static_cast<double>(m.rows()) < config.min_cov) return;
        for (const auto& con : m.literals()) {
            if (target && con.column != *target) continue;
            const bool same_column = std::any_of(chosen.begin(), chosen.end(),
                                                 [&](const Literal& l) { return l.column == con.column; });
            if (same_column) continue;
            Rule rule(chosen, con);
            const auto q = quality(rule, config.pair, m);
            if (passes(q, config)) out.rules.push_back({rule, q});
        }
    };
    // Each column contributes nothing or exactly one of its labels; the
    // consequent takes the last slot of the itemset budget.
    auto recurse = [&](auto&& self, std::uint32_t column) -> void {
        if (column == vocab.variables.size()) {
            consider();
            return;
        }
        self(self, column + 1);
        if (chosen.size() + 1 >= config.max_itemset_size) return;
        for (std::uint32_t l = 0; l < vocab.labels[column].size(); ++l) {
            chosen.push_back({column, l});
            self(self, column + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);

    if (config.prune_redundant) out = prune_redundant(std::move(out));
    out.sort();
    return out;
}

RuleSet brute_force_mine(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions,
                         const MinerConfig& config) {
    RuleSet rs = brute_force_mine(fuzzify(dataset, partitions), config);
    stamp(rs, dataset);
    return rs;
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void to_json(nlohmann::json& j, const MinerConfig& config) {
    j = {{"pair", config.pair},
         {"min_cov", config.min_cov},
         {"min_supp", config.min_supp},
         {"min_conf", config.min_conf},
         {"max_itemset_size", config.max_itemset_size},
         {"prune_redundant", config.prune_redundant},
         {"target_column", config.target_column ? nlohmann::json(*config.target_column) : nlohmann::json()}};
}

namespace {

nlohmann::json literal_json(const Vocabulary& vocab, const Literal& l) {
    return {{"variable", vocab.variables.at(l.column)}, {"label", vocab.labels.at(l.column).at(l.label)}};
}

}  // namespace

void to_json(nlohmann::json& j, const RuleSet& ruleset) {
    const auto& p = ruleset.provenance;
    nlohmann::json vocab = nlohmann::json::array();
    for (std::size_t c = 0; c < ruleset.vocabulary.variables.size(); ++c) {
        vocab.push_back({{"variable", ruleset.vocabulary.variables[c]}, {"labels", ruleset.vocabulary.labels[c]}});
    }
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : ruleset.rules) {
        nlohmann::json ant = nlohmann::json::array();
        for (const auto& l : r.rule.antecedent()) ant.push_back(literal_json(ruleset.vocabulary, l));
        rules.push_back({{"text", r.rule.text(ruleset.vocabulary)},
                         {"antecedent", std::move(ant)},
                         {"consequent", literal_json(ruleset.vocabulary, r.rule.consequent())},
                         {"quality", r.quality}});
    }
    j = {{"provenance",
          {{"config", p.config},
           {"mode", p.mode},
           {"dataset_fingerprint", p.dataset_fingerprint},
           {"rows", p.rows},
           {"dropped_rows", p.dropped_rows},
           {"warnings", p.warnings}}},
         {"vocabulary", std::move(vocab)},
         {"rules", std::move(rules)}};
}

RuleSet ruleset_from_json(const nlohmann::json& j) {
    try {
        RuleSet rs;
        for (const auto& v : j.at("vocabulary")) {
            rs.vocabulary.variables.push_back(v.at("variable").get<std::string>());
            rs.vocabulary.labels.push_back(v.at("labels").get<std::vector<std::string>>());
        }
        auto literal = [&](const nlohmann::json& l) {
            return rs.vocabulary.find(l.at("variable").get<std::string>(), l.at("label").get<std::string>());
        };
        for (const auto& r : j.at("rules")) {
            std::vector<Literal> ant;
            for (const auto& l : r.at("antecedent")) ant.push_back(literal(l));
            QualityReport q;
            const auto& qj = r.at("quality");
            q.fcov = qj.at("fcov").get<double>();
            q.fsupp = qj.at("fsupp").get<double>();
            q.fconf = qj.at("fconf").get<double>();
            q.fwracc = qj.at("fwracc").get<double>();
            q.vacuous = qj.value("vacuous", false);
            rs.rules.push_back({Rule(std::move(ant), literal(r.at("consequent"))), q});
        }
        if (j.contains("provenance")) {
            const auto& p = j.at("provenance");
            rs.provenance.mode = p.value("mode", "fuzzy");
            rs.provenance.dataset_fingerprint = p.value("dataset_fingerprint", "");
            rs.provenance.rows = p.value("rows", std::size_t{0});
            rs.provenance.dropped_rows = p.value("dropped_rows", std::size_t{0});
            rs.provenance.warnings = p.value("warnings", std::vector<std::string>{});
        }
        return rs;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed rule set: ") + e.what());
    } catch (const UsageError& e) {
        throw InputError(std::string("malformed rule set: ") + e.what());
    }
}

void write_rules_csv(std::ostream& out, const RuleSet& ruleset) {
    auto quoted = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + '"';
    };
    out << "antecedent,consequent,fcov,fsupp,fconf,fwracc\n";
    for (const auto& r : ruleset.rules) {
        std::string ant;
        for (std::size_t i = 0; i < r.rule.antecedent().size(); ++i) {
            if (i) ant += " AND ";
            ant += ruleset.vocabulary.literal_name(r.rule.antecedent()[i]);
        }
        out << quoted(ant) << ',' << quoted(ruleset.vocabulary.literal_name(r.rule.consequent())) << ','
            << format_double(r.quality.fcov) << ',' << format_double(r.quality.fsupp) << ','
            << format_double(r.quality.fconf) << ',' << format_double(r.quality.fwracc) << '\n';
    }
}

}  // namespace firm
