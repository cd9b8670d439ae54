#include "firm/rules.hpp"

#include <algorithm>

#include "firm/errors.hpp"
#include "firm/numeric.hpp"

namespace firm {

Rule::Rule(std::vector<Literal> antecedent, Literal consequent)
    : antecedent_(std::move(antecedent)), consequent_(consequent) {
    if (antecedent_.empty()) throw UsageError("rule antecedent is empty");
    std::sort(antecedent_.begin(), antecedent_.end());
    for (std::size_t i = 0; i < antecedent_.size(); ++i) {
        if (i > 0 && antecedent_[i].column == antecedent_[i - 1].column) {
            throw UsageError("rule antecedent has two labels on one variable");
        }
        if (antecedent_[i].column == consequent_.column) {
            throw UsageError("rule consequent variable also appears in the antecedent");
        }
    }
}

std::string Rule::text(const Vocabulary& vocabulary) const {
    std::string out = "IF ";
    for (std::size_t i = 0; i < antecedent_.size(); ++i) {
        if (i) out += " AND ";
        out += vocabulary.literal_name(antecedent_[i]);
    }
    out += " THEN ";
    out += vocabulary.literal_name(consequent_);
    return out;
}

double mu_ant(const Rule& rule, std::size_t row, const TNormSpec& tnorm, const MembershipMatrix& m) {
    if (row >= m.rows()) throw UsageError("row out of range");
    double acc = m.at(row, rule.antecedent().front());
    for (std::size_t i = 1; i < rule.antecedent().size(); ++i) {
        acc = firm::tnorm(tnorm, acc, m.at(row, rule.antecedent()[i]));
    }
    return acc;
}

double mu_con(const Rule& rule, std::size_t row, const MembershipMatrix& m) {
    if (row >= m.rows()) throw UsageError("row out of range");
    return m.at(row, rule.consequent());
}

double mu_rule(const Rule& rule, std::size_t row, const OperatorPair& pair, const MembershipMatrix& m) {
    return implication(pair.implication, mu_ant(rule, row, pair.tnorm, m), mu_con(rule, row, m));
}

double mu_eval(const Rule& rule, std::size_t row, const OperatorPair& pair, const MembershipMatrix& m) {
    return gmp(pair, mu_ant(rule, row, pair.tnorm, m), mu_con(rule, row, m));
}

QualityReport summarize(std::span<const double> antecedent, std::span<const double> consequent,
                        const OperatorPair& pair) {
    if (antecedent.empty()) throw UsageError("quality needs at least one example");
    if (antecedent.size() != consequent.size()) throw UsageError("truth vectors differ in length");
    const std::size_t n = antecedent.size();
    std::vector<double> eval(n);
    for (std::size_t d = 0; d < n; ++d) eval[d] = gmp(pair, antecedent[d], consequent[d]);

    const double count = static_cast<double>(n);
    QualityReport q;
    q.fcov = pairwise_sum(antecedent) / count;
    q.fsupp = pairwise_sum(eval) / count;
    const double base = pairwise_sum(consequent) / count;
    if (q.fcov > 0.0) {
        q.fconf = q.fsupp / q.fcov;
    } else {
        q.vacuous = true;
    }
    q.fwracc = q.fcov * (q.fconf - base);
    return q;
}

QualityReport quality(const Rule& rule, const OperatorPair& pair, const MembershipMatrix& m) {
    if (m.rows() == 0) throw UsageError("quality needs a non-empty membership matrix");
    std::vector<double> ant(m.rows());
    std::vector<double> values(rule.antecedent().size());
    for (std::size_t d = 0; d < m.rows(); ++d) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = m.at(d, rule.antecedent()[i]);
        ant[d] = tnorm_nary(pair.tnorm, values);
    }
    return summarize(ant, m.column(rule.consequent()), pair);
}

bool is_refinement(const Rule& general, const Rule& refined) {
    if (general.consequent() != refined.consequent()) return false;
    const auto& g = general.antecedent();
    const auto& r = refined.antecedent();
    return g.size() < r.size() && std::includes(r.begin(), r.end(), g.begin(), g.end());
}

void to_json(nlohmann::json& j, const QualityReport& q) {
    j = {{"fcov", q.fcov}, {"fsupp", q.fsupp}, {"fconf", q.fconf}, {"fwracc", q.fwracc}};
    if (q.vacuous) j["vacuous"] = true;
}

}  // namespace firm
