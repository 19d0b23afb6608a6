#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "cantor/error.hpp"
#include "cantor/param.hpp"

using namespace cantor;
using namespace cantor::param;

namespace {

// Every row of length d over {0,1,2}, in base-3 order.
std::vector<Row> all_rows(std::size_t d) {
    std::vector<Row> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= 3;
    }
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint8_t> symbols(d);
        std::size_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
            symbols[i] = static_cast<std::uint8_t>(c % 3);
            c /= 3;
        }
        out.emplace_back(std::move(symbols));
    }
    return out;
}

BinaryString doubled(const BinaryString& half) {
    BinaryString out;
    for (std::size_t i = 0; i < half.size(); ++i) {
        out.push_back(half[i]);
        out.push_back(half[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("consistency and hits") {
    CHECK(consistent(Row::parse("222"), BinaryString::parse("101")));
    CHECK(consistent(Row::parse("101"), BinaryString::parse("101")));
    CHECK(consistent(Row::parse("021"), BinaryString::parse("001")));
    CHECK(consistent(Row::parse("021"), BinaryString::parse("011")));
    CHECK_FALSE(consistent(Row::parse("021"), BinaryString::parse("010")));
    CHECK_THROWS_AS(consistent(Row::parse("021"), BinaryString::parse("01")), std::invalid_argument);
    CHECK(consistent(Row::parse("02"), BinaryString::parse("011")));
    CHECK(hits(Row::parse("222")) == 0);
    CHECK(hits(Row::parse("021")) == 2);
    CHECK(hits(Row::parse("0110")) == 4);
    CHECK_THROWS_AS(Row::parse("013"), std::invalid_argument);
}

TEST_CASE("halving examples") {
    CHECK(halve_row(Row::parse("20")) == Row::parse("0"));
    CHECK(halve_row(Row::parse("22")) == Row::parse("2"));
    CHECK(halve_row(Row::parse("1102")) == Row::parse("10"));
    CHECK(halve_row(Row::parse("")) == Row::parse(""));
    CHECK_THROWS_AS(halve_row(Row::parse("101")), std::invalid_argument);
    const Parametrization p({Row::parse("2021"), Row::parse("2222")});
    const Parametrization q = halve_transform(p);
    REQUIRE(q.rows().size() == 2);
    CHECK(q.rows()[0] == Row::parse("01"));
    CHECK(q.rows()[1] == Row::parse("22"));
    CHECK_THROWS_AS(Parametrization({Row::parse("0"), Row::parse("01")}), std::invalid_argument);
}

TEST_CASE("Q-soundness, exhaustive to depth 12") {
    for (std::size_t d = 0; d <= 12; d += 2) {
        const auto rows = all_rows(d);
        for (const auto& half : all_strings(d / 2)) {
            const BinaryString a = doubled(half);
            for (const auto& row : rows) {
                if (!consistent(row, a)) {
                    continue;
                }
                const Row q = halve_row(row);
                REQUIRE(consistent(q, half));
                REQUIRE(2 * hits(q) >= hits(row));
            }
        }
    }
}

TEST_CASE("refining a row keeps Q consistent") {
    for (std::size_t d = 2; d <= 8; d += 2) {
        for (const auto& half : all_strings(d / 2)) {
            const BinaryString a = doubled(half);
            for (const auto& row : all_rows(d)) {
                if (!consistent(row, a)) {
                    continue;
                }
                for (std::size_t x = 0; x < d; ++x) {
                    if (row[x] != kAbstain) {
                        continue;
                    }
                    auto symbols = row.symbols();
                    symbols[x] = a[x];
                    REQUIRE(consistent(halve_row(Row(symbols)), half));
                }
            }
        }
    }
}

TEST_CASE("io match report and file") {
    std::istringstream in("# rows\n0122\n\n2222\n1111\n");
    const Parametrization p = read_parametrization(in);
    REQUIRE(p.rows().size() == 3);
    CHECK(p.depth() == 4);
    const auto report = io_match_report(p, BinaryString::parse("0101"));
    CHECK(report[0].consistent);
    CHECK(report[0].hits == 2);
    CHECK(report[1].consistent);
    CHECK(report[1].hits == 0);
    CHECK_FALSE(report[2].consistent);
    CHECK(report[2].hits == 4);

    std::istringstream ragged("01\n012\n");
    CHECK_THROWS_AS(read_parametrization(ragged), ParseError);
    std::istringstream symbol("01x\n");
    CHECK_THROWS_AS(read_parametrization(symbol), ParseError);
}
