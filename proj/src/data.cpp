#include "firm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "firm/errors.hpp"
#include "firm/numeric.hpp"

namespace firm {

void Dataset::validate() const {
    std::set<std::string> names;
    for (const auto& col : columns) {
        if (!names.insert(col.name).second) throw UsageError("duplicate column '" + col.name + "'");
        if (col.size() != row_count) {
            throw UsageError("column '" + col.name + "' has " + std::to_string(col.size()) +
                             " values, expected " + std::to_string(row_count));
        }
        if (col.kind == ColumnKind::Numeric) {
            for (double v : col.numeric) {
                if (!std::isfinite(v)) throw UsageError("column '" + col.name + "' has a non-finite value");
            }
        }
    }
}

std::size_t Dataset::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    throw UsageError("no column named '" + std::string(name) + "'");
}

Dataset Dataset::without_column(std::string_view name) const {
    Dataset copy = *this;
    copy.columns.erase(copy.columns.begin() + static_cast<std::ptrdiff_t>(column_index(name)));
    return copy;
}

namespace {

// Splits RFC 4180 records. Quoted fields may contain separators, quotes
// ("") and line breaks.
std::vector<std::vector<std::string>> split_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        const bool blank = record.size() == 1 && record.front().empty() && !field_started;
        if (!blank) records.push_back(std::move(record));
        record.clear();
        field_started = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n':
                end_record();
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (in_quotes) throw InputError("unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Dataset parse_csv(std::string_view text, const std::map<std::string, ColumnKind>& overrides) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    auto records = split_records(text);
    if (records.empty()) throw InputError("missing header row");
    const auto header = std::move(records.front());
    const std::size_t width = header.size();
    {
        std::set<std::string> seen;
        for (const auto& name : header) {
            if (name.empty()) throw InputError("empty column name in header");
            if (!seen.insert(name).second) throw InputError("duplicate column name '" + name + "'");
        }
    }
    for (const auto& [name, kind] : overrides) {
        if (std::find(header.begin(), header.end(), name) == header.end()) {
            throw InputError("schema override for unknown column '" + name + "'");
        }
    }

    std::vector<const std::vector<std::string>*> kept;
    std::size_t dropped = 0;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != width) {
            throw InputError("row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                             " fields, header has " + std::to_string(width));
        }
        const bool has_empty =
            std::any_of(rec.begin(), rec.end(), [](const std::string& f) { return trim(f).empty(); });
        if (has_empty) {
            ++dropped;
        } else {
            kept.push_back(&rec);
        }
    }
    if (kept.empty()) throw InputError("no data rows");

    Dataset ds;
    ds.row_count = kept.size();
    ds.dropped_rows = dropped;
    for (std::size_t c = 0; c < width; ++c) {
        Column col;
        col.name = header[c];
        std::vector<double> parsed(kept.size());
        bool numeric = true;
        for (std::size_t r = 0; r < kept.size() && numeric; ++r) {
            numeric = parse_real((*kept[r])[c], parsed[r]);
        }
        if (auto it = overrides.find(col.name); it != overrides.end()) {
            if (it->second == ColumnKind::Numeric && !numeric) {
                throw InputError("column '" + col.name + "' is declared numeric but has non-numeric values");
            }
            numeric = it->second == ColumnKind::Numeric;
        }
        if (numeric) {
            col.kind = ColumnKind::Numeric;
            col.numeric = std::move(parsed);
        } else {
            col.kind = ColumnKind::Categorical;
            col.categorical.reserve(kept.size());
            for (const auto* rec : kept) col.categorical.push_back((*rec)[c]);
        }
        ds.columns.push_back(std::move(col));
    }
    return ds;
}

Dataset load_csv(const std::string& path, const std::map<std::string, ColumnKind>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    Dataset ds = parse_csv(bytes, overrides);
    char hex[17];
    ds.fingerprint = std::string(hex64(fnv1a64(bytes), hex));
    return ds;
}

namespace {

void write_field(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

void write_csv(std::ostream& out, const Dataset& dataset) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
        if (c) out << ',';
        write_field(out, dataset.columns[c].name);
    }
    out << '\n';
    for (std::size_t r = 0; r < dataset.row_count; ++r) {
        for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
            if (c) out << ',';
            const auto& col = dataset.columns[c];
            if (col.kind == ColumnKind::Numeric) {
                out << col.numeric[r];
            } else {
                write_field(out, col.categorical[r]);
            }
        }
        out << '\n';
    }
    out.precision(old_precision);
}

std::string Vocabulary::literal_name(const Literal& literal) const {
    return variables.at(literal.column) + "=" + labels.at(literal.column).at(literal.label);
}

Literal Vocabulary::find(std::string_view variable, std::string_view label) const {
    for (std::size_t c = 0; c < variables.size(); ++c) {
        if (variables[c] != variable) continue;
        for (std::size_t l = 0; l < labels[c].size(); ++l) {
            if (labels[c][l] == label) {
                return {static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(l)};
            }
        }
        throw UsageError("variable '" + std::string(variable) + "' has no label '" + std::string(label) + "'");
    }
    throw UsageError("unknown variable '" + std::string(variable) + "'");
}

MembershipMatrix::MembershipMatrix(Vocabulary vocabulary, std::size_t rows, std::vector<double> column_major)
    : vocabulary_(std::move(vocabulary)), rows_(rows), data_(std::move(column_major)) {
    if (vocabulary_.variables.size() != vocabulary_.labels.size()) {
        throw UsageError("vocabulary has mismatched variable and label lists");
    }
    for (std::uint32_t c = 0; c < vocabulary_.variables.size(); ++c) {
        offsets_.push_back(literals_.size());
        for (std::uint32_t l = 0; l < vocabulary_.labels[c].size(); ++l) literals_.push_back({c, l});
    }
    if (data_.size() != rows_ * literals_.size()) throw UsageError("membership data has the wrong size");
    for (double v : data_) {
        if (!(v >= 0.0 && v <= 1.0)) throw UsageError("membership degree outside [0,1]");
    }
}

std::size_t MembershipMatrix::index_of(const Literal& literal) const {
    if (literal.column >= offsets_.size() || literal.label >= vocabulary_.labels[literal.column].size()) {
        throw UsageError("literal out of range");
    }
    return offsets_[literal.column] + literal.label;
}

void MembershipMatrix::write_csv(std::ostream& out) const {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t l = 0; l < literals_.size(); ++l) {
        if (l) out << ',';
        write_field(out, vocabulary_.literal_name(literals_[l]));
    }
    out << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t l = 0; l < literals_.size(); ++l) {
            if (l) out << ',';
            out << data_[l * rows_ + r];
        }
        out << '\n';
    }
    out.precision(old_precision);
}

MembershipMatrix fuzzify(const Dataset& dataset, const std::vector<FuzzyPartition>& partitions) {
    dataset.validate();
    std::vector<const FuzzyPartition*> bound(dataset.columns.size(), nullptr);
    for (const auto& p : partitions) {
        const std::size_t c = dataset.column_index(p.variable());
        if (bound[c]) throw UsageError("two partitions for column '" + p.variable() + "'");
        bound[c] = &p;
    }
    Vocabulary vocab;
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
        const auto& col = dataset.columns[c];
        if (!bound[c]) throw UsageError("no partition for column '" + col.name + "'");
        if (bound[c]->is_numeric() != (col.kind == ColumnKind::Numeric)) {
            throw UsageError("partition type does not match column '" + col.name + "'");
        }
        vocab.variables.push_back(col.name);
        std::vector<std::string> names;
        for (const auto& label : bound[c]->labels()) names.push_back(label.name);
        vocab.labels.push_back(std::move(names));
    }

    const std::size_t rows = dataset.row_count;
    std::vector<double> data;
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
        const auto& col = dataset.columns[c];
        const auto& part = *bound[c];
        for (std::size_t l = 0; l < part.size(); ++l) {
            for (std::size_t r = 0; r < rows; ++r) {
                data.push_back(col.kind == ColumnKind::Numeric ? part.membership(l, col.numeric[r])
                                                               : part.membership(l, col.categorical[r]));
            }
        }
    }
    return MembershipMatrix(std::move(vocab), rows, std::move(data));
}

std::vector<FuzzyPartition> default_partitions(const Dataset& dataset, bool crisp) {
    std::vector<FuzzyPartition> out;
    for (const auto& col : dataset.columns) {
        if (col.kind == ColumnKind::Numeric) {
            auto p = build_numeric_partition(col.name, col.numeric);
            out.push_back(crisp ? crispify(p) : std::move(p));
        } else {
            std::set<std::string> unique(col.categorical.begin(), col.categorical.end());
            out.push_back(build_crisp_partition(col.name, {unique.begin(), unique.end()}));
        }
    }
    return out;
}

}  // namespace firm
