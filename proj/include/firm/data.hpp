#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firm/partitions.hpp"

namespace firm {

enum class ColumnKind { Numeric, Categorical };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    std::vector<double> numeric;          // filled iff kind == Numeric
    std::vector<std::string> categorical;  // filled iff kind == Categorical

    std::size_t size() const { return kind == ColumnKind::Numeric ? numeric.size() : categorical.size(); }
};

/// Column-oriented table of examples.
struct Dataset {
    std::vector<Column> columns;
    std::size_t row_count = 0;
    std::size_t dropped_rows = 0;  // rows skipped at ingestion for empty fields
    std::string fingerprint;        // FNV-1a of the raw bytes, hex; empty if built in memory

    /// Checks equal column lengths, unique names and finite numerics.
    /// Throws UsageError.
    void validate() const;

    std::size_t column_index(std::string_view name) const;  // throws UsageError
    const Column& column(std::string_view name) const { return columns[column_index(name)]; }

    /// Copy of the dataset without the named column.
    Dataset without_column(std::string_view name) const;
};

/// Parses RFC 4180 CSV text with a header row. A column is numeric iff every
/// field parses as a finite real, unless overridden. Rows with an empty field
/// are dropped and counted. Throws InputError on ragged rows, a missing
/// header or zero data rows.
Dataset parse_csv(std::string_view text, const std::map<std::string, ColumnKind>& overrides = {});

/// Reads and parses a CSV file; sets the fingerprint. Throws InputError.
Dataset load_csv(const std::string& path, const std::map<std::string, ColumnKind>& overrides = {});

/// Writes a dataset as CSV; numerics with round-trip precision.
void write_csv(std::ostream& out, const Dataset& dataset);

/// The (feature, label) atom "X IS L".
struct Literal {
    std::uint32_t column = 0;
    std::uint32_t label = 0;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Variable and label names backing a set of literals.
struct Vocabulary {
    std::vector<std::string> variables;
    std::vector<std::vector<std::string>> labels;  // per variable

    std::string literal_name(const Literal& literal) const;  // "variable=label"
    /// Throws UsageError if either name is unknown.
    Literal find(std::string_view variable, std::string_view label) const;

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

/// Membership degrees of every example under every literal. Literals are
/// ordered by column, then by label. Storage is one contiguous block per
/// literal so that level-wise search can stream whole literals.
class MembershipMatrix {
public:
    MembershipMatrix(Vocabulary vocabulary, std::size_t rows, std::vector<double> column_major);

    std::size_t rows() const { return rows_; }
    std::size_t literal_count() const { return literals_.size(); }
    const std::vector<Literal>& literals() const { return literals_; }
    const Vocabulary& vocabulary() const { return vocabulary_; }

    std::size_t index_of(const Literal& literal) const;  // throws UsageError
    std::span<const double> column(std::size_t literal_index) const {
        return {data_.data() + literal_index * rows_, rows_};
    }
    std::span<const double> column(const Literal& literal) const { return column(index_of(literal)); }
    double at(std::size_t row, const Literal& literal) const { return column(literal)[row]; }

    /// Header "<variable>=<label>" per literal, one example per line.
    void write_csv(std::ostream& out) const;

private:
    Vocabulary vocabulary_;
    std::size_t rows_ = 0;
    std::vector<Literal> literals_;
    std::vector<std::size_t> offsets_;  // first literal index of each column
    std::vector<double> data_;
};

/// Membership matrix under one partition per column, matched by name.
/// Throws UsageError on missing, extra or type-mismatched partitions.
MembershipMatrix fuzzify(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions);

/// Quantile triangles for numeric columns and indicator labels (sorted
/// categories) for categorical ones. With `crisp`, numeric partitions are
/// crispified.
std::vector<FuzzyPartition> default_partitions(const Dataset& dataset, bool crisp = false);

}  // namespace firm
