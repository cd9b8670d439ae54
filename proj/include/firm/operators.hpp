#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "firm/grid.hpp"

namespace firm {

enum class TNormKind { Minimum, Product, Lukasiewicz, SchweizerSklar };

/// A t-norm family member. `lambda` is set exactly for SchweizerSklar and
/// must be negative.
struct TNormSpec {
    TNormKind kind = TNormKind::Minimum;
    std::optional<double> lambda;

    static TNormSpec minimum() { return {TNormKind::Minimum, std::nullopt}; }
    static TNormSpec product() { return {TNormKind::Product, std::nullopt}; }
    static TNormSpec lukasiewicz() { return {TNormKind::Lukasiewicz, std::nullopt}; }
    static TNormSpec schweizer_sklar(double lambda);

    /// Throws ConfigError when parameters do not match the kind.
    void validate() const;

    friend bool operator==(const TNormSpec&, const TNormSpec&) = default;
};

enum class ImplicationKind { Lukasiewicz, Goguen, Godel, YagerIY, SchweizerSklarK, Ip };

/// A fuzzy implication family member. `lambda` is set exactly for
/// SchweizerSklarK (negative), `p` exactly for Ip (positive).
struct ImplicationSpec {
    ImplicationKind kind = ImplicationKind::Lukasiewicz;
    std::optional<double> lambda;
    std::optional<double> p;

    static ImplicationSpec lukasiewicz() { return {ImplicationKind::Lukasiewicz, {}, {}}; }
    static ImplicationSpec goguen() { return {ImplicationKind::Goguen, {}, {}}; }
    static ImplicationSpec godel() { return {ImplicationKind::Godel, {}, {}}; }
    static ImplicationSpec yager_iy() { return {ImplicationKind::YagerIY, {}, {}}; }
    static ImplicationSpec schweizer_sklar_k(double lambda);
    static ImplicationSpec ip(double p);

    void validate() const;

    friend bool operator==(const ImplicationSpec&, const ImplicationSpec&) = default;
};

struct OperatorPair {
    TNormSpec tnorm;
    ImplicationSpec implication;

    void validate() const;
    /// Short human-readable label, e.g. "(lukasiewicz, ip p=0.01)".
    std::string label() const;

    friend bool operator==(const OperatorPair&, const OperatorPair&) = default;
};

std::string_view kind_name(TNormKind kind);
std::string_view kind_name(ImplicationKind kind);

// Evaluation. Arguments are truth values in [0,1]; results are clamped to
// [0,1]. Specs are assumed valid except that out-of-domain Schweizer-Sklar
// parameters throw ConfigError.

double tnorm(const TNormSpec& spec, double x, double y);

/// Left fold of the binary t-norm. Throws UsageError on an empty list.
double tnorm_nary(const TNormSpec& spec, std::span<const double> values);

double implication(const ImplicationSpec& spec, double x, double y);

/// Generalized modus ponens T(x, I(x, y)).
double gmp(const OperatorPair& pair, double x, double y);

// Numerical certification.

inline constexpr double kPropertyTolerance = 1e-9;

enum class Property { I1, I2, I3, NP, OP, TC, MTC };

std::string_view property_name(Property property);

/// Point at which a property is violated. For I1 and MTC the first argument
/// ranges over x_tilde <= x; for I2 the second argument over y_tilde <= y.
/// Unused coordinates repeat x or y.
struct Witness {
    double x = 0.0;
    double x_tilde = 0.0;
    double y = 0.0;
    double y_tilde = 0.0;

    friend auto operator<=>(const Witness&, const Witness&) = default;
};

struct PropertyReport {
    Property property = Property::I1;
    bool holds = true;
    double max_violation = 0.0;
    std::optional<Witness> witness;  // present iff !holds
};

/// Violation of `property` at a single witness, >= 0. Axiom properties only
/// use pair.implication.
double violation_at(const OperatorPair& pair, Property property, const Witness& w);

/// Reports for I1, I2, I3, NP and OP, in that order.
std::vector<PropertyReport> check_axioms(const ImplicationSpec& spec, const GridSpec& grid);

PropertyReport check_tc(const OperatorPair& pair, const GridSpec& grid);

/// Worst violation of T(x~, I(x~, y)) <= T(x, I(x, y)) over grid triples
/// x~ <= x. Ties between worst triples go to the lexicographically smallest.
PropertyReport check_mtc(const OperatorPair& pair, const GridSpec& grid);

inline constexpr double kDefaultLambda = -10.0;
inline constexpr double kDefaultP = 0.01;

/// The four adequate pairs used throughout the experiments:
/// (product, yager_iy), (lukasiewicz, lukasiewicz),
/// (schweizer_sklar, schweizer_sklar_k) and (lukasiewicz, ip).
std::vector<OperatorPair> adequate_pairs(double lambda = kDefaultLambda, double p = kDefaultP);

/// CLI shorthands: tp-iy, tlk-ilk, tss-kss, tlk-ip, tm-igd, tm-igg, tp-igg,
/// crisp. `crisp` maps to (product, yager_iy).
OperatorPair pair_from_shorthand(std::string_view name, double lambda = kDefaultLambda,
                                 double p = kDefaultP);

void to_json(nlohmann::json& j, const TNormSpec& spec);
void from_json(const nlohmann::json& j, TNormSpec& spec);
void to_json(nlohmann::json& j, const ImplicationSpec& spec);
void from_json(const nlohmann::json& j, ImplicationSpec& spec);
void to_json(nlohmann::json& j, const OperatorPair& pair);
void from_json(const nlohmann::json& j, OperatorPair& pair);
void to_json(nlohmann::json& j, const PropertyReport& report);

}  // namespace firm
