#include "firm/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "firm/errors.hpp"

namespace firm {

double triangular_membership(double a, double b, double c, double x) {
    if (!(a <= b && b <= c)) throw ConfigError("triangular label needs a <= b <= c");
    if (a == b && b == c) return x == b ? 1.0 : 0.0;
    double mu = 0.0;
    if (x <= b) {
        if (a == b) return 1.0;
        if (x <= a) return 0.0;
        mu = (x - a) / (b - a);
    } else {
        if (b == c) return 1.0;
        if (x >= c) return 0.0;
        mu = (c - x) / (c - b);
    }
    return std::clamp(mu, 0.0, 1.0);
}

namespace {

bool is_numeric_spec(const LabelSpec& spec) { return !std::holds_alternative<CrispCategory>(spec); }

void validate_spec(const std::string& variable, const Label& label) {
    if (const auto* t = std::get_if<Triangular>(&label.spec)) {
        if (!std::isfinite(t->a) || !std::isfinite(t->b) || !std::isfinite(t->c) ||
            !(t->a <= t->b && t->b <= t->c)) {
            throw ConfigError("label " + variable + "=" + label.name + " needs finite a <= b <= c");
        }
    } else if (const auto* iv = std::get_if<CrispInterval>(&label.spec)) {
        if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || !(iv->lo <= iv->hi)) {
            throw ConfigError("label " + variable + "=" + label.name + " needs finite lo <= hi");
        }
    }
}

}  // namespace

FuzzyPartition::FuzzyPartition(std::string variable, std::vector<Label> labels)
    : variable_(std::move(variable)), labels_(std::move(labels)) {
    if (variable_.empty()) throw ConfigError("partition needs a variable name");
    if (labels_.empty()) throw ConfigError("partition for '" + variable_ + "' has no labels");
    std::set<std::string> names;
    numeric_ = is_numeric_spec(labels_.front().spec);
    range_lo_ = std::numeric_limits<double>::infinity();
    range_hi_ = -std::numeric_limits<double>::infinity();
    for (const auto& label : labels_) {
        if (label.name.empty()) throw ConfigError("empty label name in '" + variable_ + "'");
        if (!names.insert(label.name).second) {
            throw ConfigError("duplicate label '" + label.name + "' in '" + variable_ + "'");
        }
        if (is_numeric_spec(label.spec) != numeric_) {
            throw ConfigError("partition '" + variable_ + "' mixes numeric and categorical labels");
        }
        validate_spec(variable_, label);
        if (const auto* t = std::get_if<Triangular>(&label.spec)) {
            range_lo_ = std::min(range_lo_, t->a);
            range_hi_ = std::max(range_hi_, t->c);
        } else if (const auto* iv = std::get_if<CrispInterval>(&label.spec)) {
            range_lo_ = std::min(range_lo_, iv->lo);
            range_hi_ = std::max(range_hi_, iv->hi);
        }
    }
}

bool FuzzyPartition::is_triangular() const {
    return std::all_of(labels_.begin(), labels_.end(),
                       [](const Label& l) { return std::holds_alternative<Triangular>(l.spec); });
}

std::size_t FuzzyPartition::label_index(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].name == name) return i;
    }
    throw UsageError("variable '" + variable_ + "' has no label '" + std::string(name) + "'");
}

double FuzzyPartition::membership(std::size_t index, double value) const {
    if (index >= labels_.size()) throw UsageError("label index out of range for '" + variable_ + "'");
    if (!numeric_) throw UsageError("numeric value given for categorical variable '" + variable_ + "'");
    const double x = std::clamp(value, range_lo_, range_hi_);
    const auto& spec = labels_[index].spec;
    if (const auto* t = std::get_if<Triangular>(&spec)) return triangular_membership(t->a, t->b, t->c, x);
    const auto& iv = std::get<CrispInterval>(spec);
    const bool inside = x >= iv.lo && (x < iv.hi || (iv.closed_right && x == iv.hi));
    return inside ? 1.0 : 0.0;
}

double FuzzyPartition::membership(std::size_t index, std::string_view value) const {
    if (index >= labels_.size()) throw UsageError("label index out of range for '" + variable_ + "'");
    if (numeric_) throw UsageError("categorical value given for numeric variable '" + variable_ + "'");
    return std::get<CrispCategory>(labels_[index].spec).value == value ? 1.0 : 0.0;
}

namespace {

double median_of_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

FuzzyPartition build_numeric_partition(std::string variable, std::vector<double> values,
                                       const std::vector<std::string>& label_names) {
    if (values.empty()) throw ConfigError("cannot partition '" + variable + "': no values");
    if (label_names.size() != 3) throw ConfigError("numeric partitions take exactly 3 label names");
    std::sort(values.begin(), values.end());
    const double q0 = values.front();
    const double q100 = values.back();
    if (q0 == q100) throw ConfigError("cannot partition '" + variable + "': all values identical");
    const double q50 = median_of_sorted(values);
    return FuzzyPartition(std::move(variable), {{label_names[0], Triangular{q0, q0, q50}},
                                                 {label_names[1], Triangular{q0, q50, q100}},
                                                 {label_names[2], Triangular{q50, q100, q100}}});
}

FuzzyPartition build_crisp_partition(std::string variable, const std::vector<std::string>& categories) {
    if (categories.empty()) throw ConfigError("cannot partition '" + variable + "': no categories");
    std::vector<Label> labels;
    labels.reserve(categories.size());
    for (const auto& c : categories) labels.push_back({c, CrispCategory{c}});
    return FuzzyPartition(std::move(variable), std::move(labels));
}

FuzzyPartition crispify(const FuzzyPartition& partition) {
    if (!partition.is_triangular()) {
        throw UsageError("crispify needs a triangular partition ('" + partition.variable() + "')");
    }
    std::vector<const Label*> ordered;
    for (const auto& l : partition.labels()) ordered.push_back(&l);
    std::stable_sort(ordered.begin(), ordered.end(), [](const Label* l, const Label* r) {
        return std::get<Triangular>(l->spec).b < std::get<Triangular>(r->spec).b;
    });
    double lo = std::get<Triangular>(ordered.front()->spec).a;
    const double hi = std::get<Triangular>(ordered.back()->spec).c;

    std::vector<Label> out(partition.size());
    for (std::size_t k = 0; k < ordered.size(); ++k) {
        const bool last = k + 1 == ordered.size();
        const double cut = last ? hi
                                : 0.5 * (std::get<Triangular>(ordered[k]->spec).b +
                                         std::get<Triangular>(ordered[k + 1]->spec).b);
        const std::size_t slot = static_cast<std::size_t>(ordered[k] - partition.labels().data());
        out[slot] = {ordered[k]->name, CrispInterval{lo, cut, last}};
        lo = cut;
    }
    return FuzzyPartition(partition.variable(), std::move(out));
}

double membership(const FuzzyPartition& partition, std::string_view label, double value) {
    return partition.membership(partition.label_index(label), value);
}

double membership(const FuzzyPartition& partition, std::string_view label, std::string_view value) {
    return partition.membership(partition.label_index(label), value);
}

void to_json(nlohmann::json& j, const FuzzyPartition& partition) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& label : partition.labels()) {
        nlohmann::json entry = {{"name", label.name}};
        if (const auto* t = std::get_if<Triangular>(&label.spec)) {
            entry["kind"] = "triangular";
            entry["a"] = t->a;
            entry["b"] = t->b;
            entry["c"] = t->c;
        } else if (const auto* c = std::get_if<CrispCategory>(&label.spec)) {
            entry["kind"] = "category";
            entry["value"] = c->value;
        } else {
            const auto& iv = std::get<CrispInterval>(label.spec);
            entry["kind"] = "interval";
            entry["lo"] = iv.lo;
            entry["hi"] = iv.hi;
            entry["closed_right"] = iv.closed_right;
        }
        labels.push_back(std::move(entry));
    }
    j = {{"variable", partition.variable()}, {"labels", std::move(labels)}};
}

FuzzyPartition partition_from_json(const nlohmann::json& j) {
    try {
        std::vector<Label> labels;
        for (const auto& entry : j.at("labels")) {
            Label label;
            label.name = entry.at("name").get<std::string>();
            const auto kind = entry.at("kind").get<std::string>();
            if (kind == "triangular") {
                label.spec = Triangular{entry.at("a").get<double>(), entry.at("b").get<double>(),
                                        entry.at("c").get<double>()};
            } else if (kind == "category") {
                label.spec = CrispCategory{entry.value("value", label.name)};
            } else if (kind == "interval") {
                label.spec = CrispInterval{entry.at("lo").get<double>(), entry.at("hi").get<double>(),
                                           entry.value("closed_right", false)};
            } else {
                throw ConfigError("unknown label kind '" + kind + "'");
            }
            labels.push_back(std::move(label));
        }
        return FuzzyPartition(j.at("variable").get<std::string>(), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed partition: ") + e.what());
    }
}

}  // namespace firm
