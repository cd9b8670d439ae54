#include "firm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "firm/errors.hpp"

namespace firm {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_negative_lambda(const std::optional<double>& lambda, std::string_view who) {
    if (!lambda || !std::isfinite(*lambda) || !(*lambda < 0.0)) {
        throw ConfigError(std::string(who) + " requires a finite lambda < 0");
    }
}

// k(x) = exp((x^lambda - 1) / lambda), the Schweizer-Sklar multiplicative
// generator, and its inverse. k(0) = 0, k^{-1}(0) = 0.
double ss_generator(double lambda, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((std::pow(x, lambda) - 1.0) / lambda);
}

}  // namespace

TNormSpec TNormSpec::schweizer_sklar(double lambda) {
    TNormSpec spec{TNormKind::SchweizerSklar, lambda};
    spec.validate();
    return spec;
}

void TNormSpec::validate() const {
    if (kind == TNormKind::SchweizerSklar) {
        require_negative_lambda(lambda, "schweizer_sklar t-norm");
    } else if (lambda) {
        throw ConfigError("t-norm '" + std::string(kind_name(kind)) + "' takes no lambda");
    }
}

ImplicationSpec ImplicationSpec::schweizer_sklar_k(double lambda) {
    ImplicationSpec spec{ImplicationKind::SchweizerSklarK, lambda, std::nullopt};
    spec.validate();
    return spec;
}

ImplicationSpec ImplicationSpec::ip(double p) {
    ImplicationSpec spec{ImplicationKind::Ip, std::nullopt, p};
    spec.validate();
    return spec;
}

void ImplicationSpec::validate() const {
    const std::string name(kind_name(kind));
    if (kind == ImplicationKind::SchweizerSklarK) {
        require_negative_lambda(lambda, "schweizer_sklar_k implication");
    } else if (lambda) {
        throw ConfigError("implication '" + name + "' takes no lambda");
    }
    if (kind == ImplicationKind::Ip) {
        if (!p || !std::isfinite(*p) || !(*p > 0.0)) {
            throw ConfigError("ip implication requires a finite p > 0");
        }
    } else if (p) {
        throw ConfigError("implication '" + name + "' takes no p");
    }
}

void OperatorPair::validate() const {
    tnorm.validate();
    implication.validate();
}

std::string OperatorPair::label() const {
    std::ostringstream out;
    out << '(' << kind_name(tnorm.kind);
    if (tnorm.lambda) out << " lambda=" << *tnorm.lambda;
    out << ", " << kind_name(implication.kind);
    if (implication.lambda) out << " lambda=" << *implication.lambda;
    if (implication.p) out << " p=" << *implication.p;
    out << ')';
    return out.str();
}

std::string_view kind_name(TNormKind kind) {
    switch (kind) {
        case TNormKind::Minimum: return "minimum";
        case TNormKind::Product: return "product";
        case TNormKind::Lukasiewicz: return "lukasiewicz";
        case TNormKind::SchweizerSklar: return "schweizer_sklar";
    }
    return "?";
}

std::string_view kind_name(ImplicationKind kind) {
    switch (kind) {
        case ImplicationKind::Lukasiewicz: return "lukasiewicz";
        case ImplicationKind::Goguen: return "goguen";
        case ImplicationKind::Godel: return "godel";
        case ImplicationKind::YagerIY: return "yager_iy";
        case ImplicationKind::SchweizerSklarK: return "schweizer_sklar_k";
        case ImplicationKind::Ip: return "ip";
    }
    return "?";
}

double tnorm(const TNormSpec& spec, double x, double y) {
    switch (spec.kind) {
        case TNormKind::Minimum: return std::min(x, y);
        case TNormKind::Product: return clamp01(x * y);
        case TNormKind::Lukasiewicz: return clamp01(x + y - 1.0);
        case TNormKind::SchweizerSklar: {
            if (!spec.lambda || !(*spec.lambda < 0.0)) {
                throw ConfigError("schweizer_sklar t-norm requires lambda < 0");
            }
            if (x <= 0.0 || y <= 0.0) return 0.0;
            if (x >= 1.0) return clamp01(y);
            if (y >= 1.0) return clamp01(x);
            const double l = *spec.lambda;
            const double s = (std::pow(x, l) - 1.0) + std::pow(y, l);
            if (!(s > 0.0)) return 0.0;
            return clamp01(std::pow(s, 1.0 / l));
        }
    }
    return 0.0;
}

double tnorm_nary(const TNormSpec& spec, std::span<const double> values) {
    if (values.empty()) throw UsageError("tnorm_nary needs at least one value");
    double acc = values.front();
    for (double v : values.subspan(1)) acc = tnorm(spec, acc, v);
    return acc;
}

double implication(const ImplicationSpec& spec, double x, double y) {
    switch (spec.kind) {
        case ImplicationKind::Lukasiewicz: return std::min(1.0, 1.0 - x + y);
        case ImplicationKind::Goguen: return x <= y ? 1.0 : clamp01(y / x);
        case ImplicationKind::Godel: return x <= y ? 1.0 : y;
        case ImplicationKind::YagerIY: return (x == 0.0 || y == 1.0) ? 1.0 : y;
        case ImplicationKind::SchweizerSklarK: {
            if (!spec.lambda || !(*spec.lambda < 0.0)) {
                throw ConfigError("schweizer_sklar_k implication requires lambda < 0");
            }
            if (x <= 0.0) return 1.0;
            if (y <= 0.0) return 0.0;
            const double l = *spec.lambda;
            if (x <= ss_generator(l, y)) return 1.0;
            return clamp01(std::pow(std::pow(y, l) - l * std::log(x), 1.0 / l));
        }
        case ImplicationKind::Ip: {
            if (!spec.p || !(*spec.p > 0.0)) throw ConfigError("ip implication requires p > 0");
            return clamp01(1.0 - x + x * std::pow(y, *spec.p));
        }
    }
    return 1.0;
}

double gmp(const OperatorPair& pair, double x, double y) {
    return tnorm(pair.tnorm, x, implication(pair.implication, x, y));
}

std::string_view property_name(Property property) {
    switch (property) {
        case Property::I1: return "I1";
        case Property::I2: return "I2";
        case Property::I3: return "I3";
        case Property::NP: return "NP";
        case Property::OP: return "OP";
        case Property::TC: return "TC";
        case Property::MTC: return "MTC";
    }
    return "?";
}

double violation_at(const OperatorPair& pair, Property property, const Witness& w) {
    const auto& imp = pair.implication;
    double v = 0.0;
    switch (property) {
        case Property::I1:
            if (w.x_tilde <= w.x) v = implication(imp, w.x, w.y) - implication(imp, w.x_tilde, w.y);
            break;
        case Property::I2:
            if (w.y_tilde <= w.y) v = implication(imp, w.x, w.y_tilde) - implication(imp, w.x, w.y);
            break;
        case Property::I3: {
            const bool is_corner = (w.x == 0.0 || w.x == 1.0) && (w.y == 0.0 || w.y == 1.0) &&
                                   !(w.x == 0.0 && w.y == 1.0);
            if (is_corner) {
                const double expected = (w.x == 1.0 && w.y == 0.0) ? 0.0 : 1.0;
                v = std::abs(implication(imp, w.x, w.y) - expected);
            }
            break;
        }
        case Property::NP:
            v = std::abs(implication(imp, 1.0, w.y) - w.y);
            break;
        case Property::OP: {
            const double value = implication(imp, w.x, w.y);
            if (w.x <= w.y) {
                v = 1.0 - value;
            } else if (value >= 1.0) {
                v = w.x - w.y;
            }
            break;
        }
        case Property::TC:
            v = gmp(pair, w.x, w.y) - w.y;
            break;
        case Property::MTC:
            if (w.x_tilde <= w.x) v = gmp(pair, w.x_tilde, w.y) - gmp(pair, w.x, w.y);
            break;
    }
    return std::max(0.0, v);
}

namespace {

// Tracks the worst violation seen and the lexicographically smallest witness
// achieving it.
class WorstCase {
public:
    explicit WorstCase(Property property) : property_(property) {}

    void offer(double violation, const Witness& w) {
        if (violation > worst_ || (violation == worst_ && violation > 0.0 && w < witness_)) {
            worst_ = violation;
            witness_ = w;
        }
    }

    PropertyReport report() const {
        PropertyReport r;
        r.property = property_;
        r.max_violation = worst_;
        r.holds = worst_ <= kPropertyTolerance;
        if (!r.holds) r.witness = witness_;
        return r;
    }

private:
    Property property_;
    double worst_ = 0.0;
    Witness witness_{};
};

// table[i * n + j] = f(pts[i], pts[j])
template <typename F>
std::vector<double> tabulate(const std::vector<double>& pts, F&& f) {
    const std::size_t n = pts.size();
    std::vector<double> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = f(pts[i], pts[j]);
    }
    return table;
}

}  // namespace

std::vector<PropertyReport> check_axioms(const ImplicationSpec& spec, const GridSpec& grid) {
    spec.validate();
    const auto pts = grid.points();
    const std::size_t n = pts.size();
    const auto table = tabulate(pts, [&](double x, double y) { return implication(spec, x, y); });
    auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

    WorstCase i1(Property::I1), i2(Property::I2), i3(Property::I3), np(Property::NP),
        op(Property::OP);

    // pts is sorted, so index order is value order.
    for (std::size_t lo = 0; lo < n; ++lo) {
        for (std::size_t hi = lo; hi < n; ++hi) {
            for (std::size_t k = 0; k < n; ++k) {
                i1.offer(at(hi, k) - at(lo, k), {pts[hi], pts[lo], pts[k], pts[k]});
                i2.offer(at(k, lo) - at(k, hi), {pts[k], pts[k], pts[hi], pts[lo]});
            }
        }
    }

    const OperatorPair probe{TNormSpec::minimum(), spec};
    for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}}) {
        const Witness w{x, x, y, y};
        i3.offer(violation_at(probe, Property::I3, w), w);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double y = pts[j];
        np.offer(std::abs(at(n - 1, j) - y), {1.0, 1.0, y, y});
        for (std::size_t i = 0; i < n; ++i) {
            const Witness w{pts[i], pts[i], y, y};
            op.offer(violation_at(probe, Property::OP, w), w);
        }
    }
    return {i1.report(), i2.report(), i3.report(), np.report(), op.report()};
}

PropertyReport check_tc(const OperatorPair& pair, const GridSpec& grid) {
    pair.validate();
    const auto pts = grid.points();
    WorstCase tc(Property::TC);
    for (double x : pts) {
        for (double y : pts) tc.offer(gmp(pair, x, y) - y, {x, x, y, y});
    }
    return tc.report();
}

PropertyReport check_mtc(const OperatorPair& pair, const GridSpec& grid) {
    pair.validate();
    const auto pts = grid.points();
    const std::size_t n = pts.size();
    const auto table = tabulate(pts, [&](double x, double y) { return gmp(pair, x, y); });
    WorstCase mtc(Property::MTC);
    for (std::size_t lo = 0; lo < n; ++lo) {
        for (std::size_t hi = lo; hi < n; ++hi) {
            for (std::size_t k = 0; k < n; ++k) {
                mtc.offer(table[lo * n + k] - table[hi * n + k], {pts[hi], pts[lo], pts[k], pts[k]});
            }
        }
    }
    return mtc.report();
}

std::vector<OperatorPair> adequate_pairs(double lambda, double p) {
    return {
        {TNormSpec::product(), ImplicationSpec::yager_iy()},
        {TNormSpec::lukasiewicz(), ImplicationSpec::lukasiewicz()},
        {TNormSpec::schweizer_sklar(lambda), ImplicationSpec::schweizer_sklar_k(lambda)},
        {TNormSpec::lukasiewicz(), ImplicationSpec::ip(p)},
    };
}

OperatorPair pair_from_shorthand(std::string_view name, double lambda, double p) {
    if (name == "tp-iy" || name == "crisp") return {TNormSpec::product(), ImplicationSpec::yager_iy()};
    if (name == "tlk-ilk") return {TNormSpec::lukasiewicz(), ImplicationSpec::lukasiewicz()};
    if (name == "tss-kss") {
        return {TNormSpec::schweizer_sklar(lambda), ImplicationSpec::schweizer_sklar_k(lambda)};
    }
    if (name == "tlk-ip") return {TNormSpec::lukasiewicz(), ImplicationSpec::ip(p)};
    if (name == "tm-igd") return {TNormSpec::minimum(), ImplicationSpec::godel()};
    if (name == "tm-igg") return {TNormSpec::minimum(), ImplicationSpec::goguen()};
    if (name == "tp-igg") return {TNormSpec::product(), ImplicationSpec::goguen()};
    throw ConfigError("unknown pair shorthand '" + std::string(name) + "'");
}

namespace {

template <typename Kind, std::size_t N>
Kind kind_from_name(const std::string& name, const Kind (&kinds)[N], std::string_view what) {
    for (Kind k : kinds) {
        if (kind_name(k) == name) return k;
    }
    throw ConfigError("unknown " + std::string(what) + " kind '" + name + "'");
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::string kind_field(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ConfigError("operator spec needs a string 'kind'");
    }
    return j.at("kind").get<std::string>();
}

}  // namespace

void to_json(nlohmann::json& j, const TNormSpec& spec) {
    j = {{"kind", kind_name(spec.kind)}};
    if (spec.lambda) j["lambda"] = *spec.lambda;
}

void from_json(const nlohmann::json& j, TNormSpec& spec) {
    static constexpr TNormKind kinds[] = {TNormKind::Minimum, TNormKind::Product,
                                          TNormKind::Lukasiewicz, TNormKind::SchweizerSklar};
    spec.kind = kind_from_name(kind_field(j), kinds, "t-norm");
    spec.lambda = optional_number(j, "lambda");
    spec.validate();
}

void to_json(nlohmann::json& j, const ImplicationSpec& spec) {
    j = {{"kind", kind_name(spec.kind)}};
    if (spec.lambda) j["lambda"] = *spec.lambda;
    if (spec.p) j["p"] = *spec.p;
}

void from_json(const nlohmann::json& j, ImplicationSpec& spec) {
    static constexpr ImplicationKind kinds[] = {
        ImplicationKind::Lukasiewicz, ImplicationKind::Goguen,          ImplicationKind::Godel,
        ImplicationKind::YagerIY,     ImplicationKind::SchweizerSklarK, ImplicationKind::Ip};
    spec.kind = kind_from_name(kind_field(j), kinds, "implication");
    spec.lambda = optional_number(j, "lambda");
    spec.p = optional_number(j, "p");
    spec.validate();
}

void to_json(nlohmann::json& j, const OperatorPair& pair) {
    j = {{"tnorm", pair.tnorm}, {"implication", pair.implication}};
}

void from_json(const nlohmann::json& j, OperatorPair& pair) {
    if (!j.is_object() || !j.contains("tnorm") || !j.contains("implication")) {
        throw ConfigError("operator pair needs 'tnorm' and 'implication'");
    }
    pair.tnorm = j.at("tnorm").get<TNormSpec>();
    pair.implication = j.at("implication").get<ImplicationSpec>();
}

void to_json(nlohmann::json& j, const PropertyReport& report) {
    j = {{"property", property_name(report.property)},
         {"holds", report.holds},
         {"max_violation", report.max_violation}};
    if (report.witness) {
        const auto& w = *report.witness;
        j["witness"] = {{"x", w.x}, {"x_tilde", w.x_tilde}, {"y", w.y}, {"y_tilde", w.y_tilde}};
    }
}

}  // namespace firm
