#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace firm {

/// Triangle with apex b. a == b gives a left shoulder (1 for x <= b),
/// b == c a right shoulder (1 for x >= b), a == b == c a singleton spike.
struct Triangular {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    friend bool operator==(const Triangular&, const Triangular&) = default;
};

struct CrispCategory {
    std::string value;
    friend bool operator==(const CrispCategory&, const CrispCategory&) = default;
};

/// [lo, hi), or [lo, hi] when closed_right.
struct CrispInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool closed_right = false;
    friend bool operator==(const CrispInterval&, const CrispInterval&) = default;
};

using LabelSpec = std::variant<Triangular, CrispCategory, CrispInterval>;

struct Label {
    std::string name;
    LabelSpec spec;
    friend bool operator==(const Label&, const Label&) = default;
};

/// Linguistic labels of one variable. All labels are of the same family:
/// numeric (triangular or interval) or categorical.
class FuzzyPartition {
public:
    /// Throws ConfigError on empty/duplicate label names, mixed families or
    /// malformed label parameters.
    FuzzyPartition(std::string variable, std::vector<Label> labels);

    const std::string& variable() const { return variable_; }
    const std::vector<Label>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool is_numeric() const { return numeric_; }
    bool is_triangular() const;

    /// Index of a label by name; throws UsageError if absent.
    std::size_t label_index(std::string_view name) const;

    /// Membership of a value under label `index`. Numeric values outside the
    /// partition's range take the value at the nearest end of the range.
    /// Throws UsageError on a numeric/categorical mismatch.
    double membership(std::size_t index, double value) const;
    double membership(std::size_t index, std::string_view value) const;

    friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;

private:
    std::string variable_;
    std::vector<Label> labels_;
    bool numeric_ = true;
    double range_lo_ = 0.0;
    double range_hi_ = 0.0;
};

/// Triangular membership with the shoulder and spike conventions of
/// `Triangular`. Throws ConfigError unless a <= b <= c.
double triangular_membership(double a, double b, double c, double x);

inline const std::vector<std::string> kDefaultNumericLabels = {"Low", "Mid", "High"};

/// Three triangles anchored at the minimum, median and maximum of `values`:
/// Low = (q0, q0, q50), Mid = (q0, q50, q100), High = (q50, q100, q100).
/// Throws ConfigError if values are empty or all identical.
FuzzyPartition build_numeric_partition(std::string variable, std::vector<double> values,
                                       const std::vector<std::string>& label_names = kDefaultNumericLabels);

/// One indicator label per category, named after the category.
FuzzyPartition build_crisp_partition(std::string variable, const std::vector<std::string>& categories);

/// Replaces triangles by intervals cut at the crossing points of adjacent
/// triangles (midpoints between apexes). A value on a cut belongs to the
/// right-hand interval. Throws UsageError for non-triangular partitions.
FuzzyPartition crispify(const FuzzyPartition& partition);

/// Membership by label name.
double membership(const FuzzyPartition& partition, std::string_view label, double value);
double membership(const FuzzyPartition& partition, std::string_view label, std::string_view value);

void to_json(nlohmann::json& j, const FuzzyPartition& partition);
/// Throws ConfigError on malformed documents.
FuzzyPartition partition_from_json(const nlohmann::json& j);

}  // namespace firm
