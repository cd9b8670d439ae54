#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "firm/data.hpp"
#include "firm/operators.hpp"

namespace firm {

/// IF antecedent THEN consequent, with one literal per column. The
/// antecedent is kept sorted so equal rules compare and hash equal.
class Rule {
public:
    /// Throws UsageError on an empty antecedent, two antecedent literals on
    /// one column, or a consequent on an antecedent column.
    Rule(std::vector<Literal> antecedent, Literal consequent);

    const std::vector<Literal>& antecedent() const { return antecedent_; }
    const Literal& consequent() const { return consequent_; }

    /// "IF a=L1 AND b=L2 THEN c=L3"
    std::string text(const Vocabulary& vocabulary) const;

    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;

private:
    std::vector<Literal> antecedent_;
    Literal consequent_;
};

struct QualityReport {
    double fcov = 0.0;
    double fsupp = 0.0;
    double fconf = 0.0;
    double fwracc = 0.0;
    bool vacuous = false;  // fcov == 0, fconf reported as 0

    friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

double mu_ant(const Rule& rule, std::size_t row, const TNormSpec& tnorm, const MembershipMatrix& m);
double mu_con(const Rule& rule, std::size_t row, const MembershipMatrix& m);
/// I(mu_ant, mu_con)
double mu_rule(const Rule& rule, std::size_t row, const OperatorPair& pair, const MembershipMatrix& m);
/// T(mu_ant, I(mu_ant, mu_con))
double mu_eval(const Rule& rule, std::size_t row, const OperatorPair& pair, const MembershipMatrix& m);

/// The four measures from per-example antecedent and consequent truth
/// values. Throws UsageError on empty or mismatched inputs.
QualityReport summarize(std::span<const double> antecedent, std::span<const double> consequent,
                        const OperatorPair& pair);

/// FCov, FSupp, FConf and FWRAcc of a rule over all examples of `m`.
QualityReport quality(const Rule& rule, const OperatorPair& pair, const MembershipMatrix& m);

/// Same consequent and a strictly smaller antecedent in `general`.
bool is_refinement(const Rule& general, const Rule& refined);

void to_json(nlohmann::json& j, const QualityReport& q);

}  // namespace firm
