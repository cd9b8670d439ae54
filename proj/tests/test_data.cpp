#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "firm/data.hpp"
#include "firm/errors.hpp"
#include "firm/numeric.hpp"
#include "support.hpp"

using namespace firm;
using firm::test::Gen;

namespace {

const std::string kIris = std::string(FIRM_DATA_DIR) + "/iris.csv";

// Nine columns in the shape of abalone: one three-way category, eight numeric.
Dataset abalone_like(std::size_t rows) {
    Gen g(4174);
    Dataset ds;
    ds.row_count = rows;
    Column sex{"sex", ColumnKind::Categorical, {}, {}};
    const char* codes[] = {"M", "F", "I"};
    for (std::size_t r = 0; r < rows; ++r) sex.categorical.push_back(codes[r % 3]);
    ds.columns.push_back(std::move(sex));
    for (int c = 0; c < 8; ++c) {
        Column col{"m" + std::to_string(c), ColumnKind::Numeric, {}, {}};
        for (std::size_t r = 0; r < rows; ++r) col.numeric.push_back(g.range(0, 1));
        ds.columns.push_back(std::move(col));
    }
    return ds;
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("iris loads with inferred types") {
    const auto ds = load_csv(kIris);
    CHECK(ds.row_count == 150);
    REQUIRE(ds.columns.size() == 5);
    for (int c = 0; c < 4; ++c) CHECK(ds.columns[c].kind == ColumnKind::Numeric);
    CHECK(ds.columns[4].kind == ColumnKind::Categorical);
    CHECK(ds.columns[4].name == "class");
    CHECK(ds.dropped_rows == 0);
    CHECK(ds.fingerprint.size() == 16);
    CHECK(ds.columns[0].numeric[0] == 5.1);
}

TEST_CASE("csv parsing rules") {
    CHECK(parse_csv("a,b\n1,x\n2,y\n").columns[0].kind == ColumnKind::Numeric);
    CHECK(parse_csv("a\n1\n2\nx\n").columns[0].kind == ColumnKind::Categorical);
    CHECK(parse_csv("a\n1\n2\ninf\n").columns[0].kind == ColumnKind::Categorical);
    CHECK(parse_csv("a\n1e3\n-2.5\n+4\n").columns[0].numeric == std::vector<double>{1000.0, -2.5, 4.0});

    const auto quoted = parse_csv("name,v\n\"x, \"\"y\"\"\",1\n\"multi\nline\",2\r\n");
    REQUIRE(quoted.row_count == 2);
    CHECK(quoted.columns[0].categorical[0] == "x, \"y\"");
    CHECK(quoted.columns[0].categorical[1] == "multi\nline");

    const auto blanks = parse_csv("a,b\n\n1,2\n\n3,4\n");
    CHECK(blanks.row_count == 2);

    const auto missing = parse_csv("a,b\n1,\n2,3\n,4\n5,6\n");
    CHECK(missing.row_count == 2);
    CHECK(missing.dropped_rows == 2);
    CHECK(missing.columns[0].numeric == std::vector<double>{2.0, 5.0});

    const auto forced = parse_csv("code\n1\n2\n", {{"code", ColumnKind::Categorical}});
    CHECK(forced.columns[0].kind == ColumnKind::Categorical);
    CHECK(forced.columns[0].categorical[1] == "2");
}

TEST_CASE("csv errors") {
    CHECK_THROWS_AS(parse_csv(""), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2\n3\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a,a\n1,2\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a\n\"open\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a\n,\n"), InputError);
    CHECK_THROWS_AS(parse_csv("a\nx\n", {{"a", ColumnKind::Numeric}}), InputError);
    CHECK_THROWS_AS(parse_csv("a\n1\n", {{"b", ColumnKind::Numeric}}), InputError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("csv write and read back") {
    Gen g(2);
    Dataset ds = firm::test::random_dataset(g, 30, 3);
    ds.columns.push_back({"tag", ColumnKind::Categorical, {}, std::vector<std::string>(30, "a,\"b\"")});
    std::ostringstream out;
    write_csv(out, ds);
    const auto back = parse_csv(out.str());
    REQUIRE(back.columns.size() == 4);
    for (int c = 0; c < 3; ++c) CHECK(back.columns[c].numeric == ds.columns[c].numeric);
    CHECK(back.columns[3].categorical == ds.columns[3].categorical);
}

TEST_CASE("fuzzify iris") {
    const auto ds = load_csv(kIris);
    const auto parts = default_partitions(ds);
    const auto m = fuzzify(ds, parts);
    CHECK(m.rows() == 150);
    CHECK(m.literal_count() == 4 * 3 + 3);
    CHECK(m.vocabulary().labels[4] == std::vector<std::string>{"setosa", "versicolor", "virginica"});
    CHECK(m.vocabulary().literal_name({0, 1}) == "sepal_length=Mid");
    CHECK(m.at(0, m.vocabulary().find("class", "setosa")) == 1.0);
    CHECK(m.at(0, m.vocabulary().find("class", "virginica")) == 0.0);

    // A row sitting at the median of sepal_length (5.8) is Mid with degree 1.
    const auto& sl = ds.columns[0].numeric;
    const auto row = static_cast<std::size_t>(std::find(sl.begin(), sl.end(), 5.8) - sl.begin());
    REQUIRE(row < sl.size());
    CHECK(m.at(row, {0, 1}) == 1.0);

    const auto crisp = fuzzify(ds, default_partitions(ds, true));
    for (std::size_t l = 0; l < crisp.literal_count(); ++l) {
        for (double v : crisp.column(l)) CHECK((v == 0.0 || v == 1.0));
    }
}

TEST_CASE("nine-column dataset yields 27 literals") {
    const auto ds = abalone_like(4174);
    const auto m = fuzzify(ds, default_partitions(ds));
    CHECK(m.rows() == 4174);
    CHECK(m.literal_count() == 8 * 3 + 3);
    CHECK(m.vocabulary().labels[0] == std::vector<std::string>{"F", "I", "M"});
}

TEST_CASE("fuzzify errors") {
    const auto ds = load_csv(kIris);
    auto parts = default_partitions(ds);
    parts.pop_back();
    CHECK_THROWS_AS(fuzzify(ds, parts), UsageError);
    parts = default_partitions(ds);
    parts.push_back(parts.front());
    CHECK_THROWS_AS(fuzzify(ds, parts), UsageError);
    parts = default_partitions(ds);
    parts[4] = build_numeric_partition("class", {1, 2, 3});
    CHECK_THROWS_AS(fuzzify(ds, parts), UsageError);
    parts = default_partitions(ds);
    parts[0] = build_numeric_partition("nope", {1, 2, 3});
    CHECK_THROWS_AS(fuzzify(ds, parts), UsageError);
}

TEST_CASE("dropping a column removes exactly its literals") {
    Gen g(5);
    const auto ds = firm::test::random_dataset(g, 40, 4);
    const auto full = fuzzify(ds, default_partitions(ds));
    const auto reduced_ds = ds.without_column("x1");
    const auto reduced = fuzzify(reduced_ds, default_partitions(reduced_ds));
    CHECK(reduced.literal_count() == full.literal_count() - 3);
    for (std::uint32_t c = 0; c < 3; ++c) {
        const std::uint32_t src = c == 0 ? 0 : c + 1;
        for (std::uint32_t l = 0; l < 3; ++l) {
            const auto a = reduced.column(Literal{c, l});
            const auto b = full.column(Literal{src, l});
            CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
        }
    }
}

TEST_CASE("fuzzify is deterministic and keeps row order") {
    Gen g(6);
    const auto ds = firm::test::random_dataset(g, 25, 2);
    const auto parts = default_partitions(ds);
    const auto a = fuzzify(ds, parts);
    const auto b = fuzzify(ds, parts);
    for (std::size_t l = 0; l < a.literal_count(); ++l) {
        const auto ca = a.column(l), cb = b.column(l);
        CHECK(std::equal(ca.begin(), ca.end(), cb.begin(), cb.end()));
        for (std::size_t r = 0; r < ds.row_count; ++r) {
            const auto lit = a.literals()[l];
            CHECK(ca[r] == parts[lit.column].membership(lit.label, ds.columns[lit.column].numeric[r]));
        }
    }
}

TEST_CASE("membership matrix dump") {
    const auto ds = parse_csv("a,c\n0,x\n5,y\n10,x\n");
    const auto m = fuzzify(ds, default_partitions(ds));
    std::ostringstream out;
    m.write_csv(out);
    CHECK(out.str() == "a=Low,a=Mid,a=High,c=x,c=y\n1,0,0,1,0\n0,1,0,0,1\n0,0,1,1,0\n");
}

TEST_CASE("matrix validation") {
    Vocabulary v{{"a"}, {{"L"}}};
    CHECK_THROWS_AS(MembershipMatrix(v, 2, {0.5}), UsageError);
    CHECK_THROWS_AS(MembershipMatrix(v, 1, {1.5}), UsageError);
    const MembershipMatrix ok(v, 1, {0.5});
    CHECK_THROWS_AS(ok.index_of({0, 3}), UsageError);
    CHECK_THROWS_AS(v.find("a", "Q"), UsageError);
    CHECK_THROWS_AS(v.find("b", "L"), UsageError);
}

TEST_CASE("numeric helpers") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
    char buf[17];
    CHECK(hex64(fnv1a64(""), buf) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a"), buf) == "af63dc4c8601ec8c");
    CHECK(unit_from_bits(0) == 0.0);
    CHECK(unit_from_bits(~0ull) < 1.0);
}

}  // TEST_SUITE
