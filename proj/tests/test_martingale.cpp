#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "cantor/codec.hpp"
#include "cantor/error.hpp"
#include "cantor/martingale.hpp"
#include "cantor/strategies.hpp"
#include "support.hpp"

using namespace cantor;

namespace {

std::vector<Rational> rationals(std::initializer_list<long> values) {
    std::vector<Rational> out;
    for (long v : values) {
        out.emplace_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(validate(Martingale::constant(Rational(1), 3), 3).ok());

    const Martingale bad = Martingale::table(1, rationals({1, 1, 2}));
    const ValidationReport report = validate(bad, 1);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].at.empty());
    CHECK(report.violations[0].kind == "averaging");

    CHECK(validate(strategies::coincidence_martingale(BinaryString::repeat(0, 8)), 8).ok());
    CHECK_THROWS_AS(validate(Martingale::constant(Rational(1), 2), 3), std::out_of_range);

    const Martingale negative = Martingale::table(1, rationals({0, 1, -1}));
    const ValidationReport neg = validate(negative, 1);
    REQUIRE(neg.violations.size() == 1);
    CHECK(neg.violations[0].kind == "negative");
    CHECK(neg.violations[0].at == BinaryString::parse("1"));

    const Martingale overstake = Martingale::strategy(Rational(1), 2, [](const BinaryString&) {
        return Bet{Rational(3, 2), 1};
    });
    const ValidationReport over = validate(overstake, 2);
    CHECK_FALSE(over.ok());
    CHECK(over.violations.front().kind == "stake");
}

TEST_CASE("evaluate and capital_trace") {
    const Martingale one = Martingale::constant(Rational(1), 4);
    CHECK(one(BinaryString::parse("0110")) == Rational(1));
    CHECK_THROWS_AS(static_cast<void>(one(BinaryString::parse("01101"))), std::out_of_range);

    const Martingale c = strategies::coincidence_martingale(BinaryString::repeat(0, 6));
    CHECK(c(BinaryString::parse("00")) == Rational(9, 4));
    CHECK(c(BinaryString::parse("01")) == Rational(3, 4));

    CHECK(capital_trace(one.to_table(), BinaryString::parse("101")) == rationals({1, 1, 1, 1}));
    CHECK(capital_trace(c, BinaryString::parse("000")) ==
          std::vector<Rational>{Rational(1), Rational(3, 2), Rational(9, 4), Rational(27, 8)});
    CHECK(capital_trace(strategies::pair_doubling_martingale(4), BinaryString::parse("0011")) ==
          rationals({1, 1, 2, 2, 4}));
    CHECK_THROWS_AS(capital_trace(c, BinaryString::repeat(0, 7)), std::out_of_range);
}

TEST_CASE("strategy and table agree everywhere") {
    const Martingale c = strategies::coincidence_martingale(BinaryString::parse("0110100"));
    const Martingale t = c.to_table();
    for_each_string(c.depth(), [&](const BinaryString& sigma) { REQUIRE(c(sigma) == t(sigma)); });
}

TEST_CASE("combine_sum") {
    const Martingale one = Martingale::constant(Rational(1), 3);
    const Martingale halves = combine_sum({{Rational(1, 2), one}, {Rational(1, 2), one}});
    for_each_string(3, [&](const BinaryString& sigma) { CHECK(halves(sigma) == Rational(1)); });

    const Martingale doubled = combine_sum({{Rational(2), strategies::coincidence_martingale(BinaryString::repeat(1, 3))}});
    CHECK(doubled(BinaryString::parse("11")) == Rational(9, 2));

    // Two opposite references cancel only at depth 1: at "00" the mix is
    // (9/4 + 1/4)/2.
    const Martingale mix = combine_sum({{Rational(1, 2), strategies::coincidence_martingale(BinaryString::repeat(0, 2))},
                                        {Rational(1, 2), strategies::coincidence_martingale(BinaryString::repeat(1, 2))}});
    CHECK(mix(BinaryString::parse("0")) == Rational(1));
    CHECK(mix(BinaryString::parse("1")) == Rational(1));
    CHECK(mix(BinaryString::parse("00")) == Rational(5, 4));
    CHECK(mix(BinaryString::parse("01")) == Rational(3, 4));
    CHECK(validate(mix, 2).ok());

    CHECK_THROWS_AS(combine_sum({}), std::invalid_argument);
    CHECK_THROWS_AS(combine_sum({{Rational(-1), one}}), std::invalid_argument);
    CHECK_THROWS_AS(combine_sum({{Rational(1), one}, {Rational(1), Martingale::constant(Rational(1), 2)}}),
                    std::invalid_argument);
}

TEST_CASE("combine_sum is linear and preserves averaging") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Martingale a = testing::random_martingale(rng, 6);
        const Martingale b = testing::random_martingale(rng, 6, Rational(3, 2));
        const Rational wa = testing::random_fraction(rng);
        const Rational wb = testing::random_fraction(rng) * Rational(3);
        const Martingale sum = combine_sum({{wa, a}, {wb, b}});
        REQUIRE(validate(sum, 6).ok());
        for_each_string(6, [&](const BinaryString& sigma) { REQUIRE(sum(sigma) == wa * a(sigma) + wb * b(sigma)); });
    }
}

TEST_CASE("savings transform") {
    const Martingale one = Martingale::constant(Rational(1), 4);
    const Martingale s1 = savings_transform(one);
    for_each_string(4, [&](const BinaryString& sigma) { CHECK(s1(sigma) == Rational(1)); });

    // All-in on 0 at every step: active hits 2 at each step and banks 1.
    const Martingale doubling = Martingale::strategy(Rational(1), 4, [](const BinaryString&) {
        return Bet{Rational(1), 0};
    });
    const SavingsDecomposition d = savings_decomposition(doubling);
    CHECK(capital_trace(d.total, BinaryString::repeat(0, 4)) == rationals({1, 2, 3, 4, 5}));
    for (std::size_t k = 0; k <= 4; ++k) {
        const std::size_t n = codec::num_of(BinaryString::repeat(0, k));
        CHECK(d.saved[n] == Rational(static_cast<long>(k)));
        CHECK(d.active[n] == Rational(1));
    }
    CHECK(validate(d.total, 4).ok());

    // Half-stake coincidence on 0000: 1, 3/2, 9/4 -> banks 1, ...
    const SavingsDecomposition c = savings_decomposition(strategies::coincidence_martingale(BinaryString::repeat(0, 4)));
    CHECK(capital_trace(c.total, BinaryString::repeat(0, 4)) ==
          std::vector<Rational>{Rational(1), Rational(3, 2), Rational(9, 4), Rational(23, 8), Rational(61, 16)});

    CHECK_THROWS_AS(savings_transform(Martingale::constant(Rational(2), 2)), std::invalid_argument);
}

TEST_CASE("savings transform drop bound, exhaustive at depth 10") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const Martingale m = testing::random_martingale(rng, 10);
        const SavingsDecomposition d = savings_decomposition(m);
        REQUIRE(validate(d.total, 10).ok());
        const Rational cap(kSavingsCap);
        for (std::size_t n = 0; n < d.active.size(); ++n) {
            REQUIRE(d.active[n] < cap);
            REQUIRE(d.active[n].sign() >= 0);
        }
        // Every σ ⊑ τ lies on some leaf path; track the running maximum.
        for (const auto& leaf : all_strings(10)) {
            const std::vector<Rational> trace = capital_trace(d.total, leaf);
            Rational running_max = trace[0];
            Rational last_saved;
            for (std::size_t i = 0; i < trace.size(); ++i) {
                running_max = std::max(running_max, trace[i]);
                REQUIRE(trace[i] > running_max - Rational(kSavingsDropBound));
                const Rational saved = d.saved[codec::num_of(leaf.prefix(i))];
                REQUIRE(saved >= last_saved);
                last_saved = saved;
            }
        }
    }
}

TEST_CASE("savings_along_path matches the table transform") {
    std::mt19937_64 rng(5);
    const Martingale m = testing::random_martingale(rng, 8);
    const Martingale s = savings_transform(m);
    for (const auto& leaf : all_strings(8)) {
        REQUIRE(savings_along_path(capital_trace(m, leaf)) == capital_trace(s, leaf));
    }
}

TEST_CASE("success_at") {
    const Martingale c = strategies::coincidence_martingale(BinaryString::repeat(0, 6));
    CHECK(success_at(c, BinaryString::repeat(0, 6), Rational(2)) == std::optional<std::size_t>(2));
    CHECK_FALSE(success_at(Martingale::constant(Rational(1), 5), BinaryString::repeat(0, 5), Rational(2)).has_value());
    CHECK(success_at(strategies::pair_doubling_martingale(4), BinaryString::parse("0011"), Rational(4)) ==
          std::optional<std::size_t>(4));
}

TEST_CASE("schnorr_hits") {
    const BinaryString a = BinaryString::parse("0110100110010110");
    const BoundFunction f = BoundFunction::from([](std::size_t n) { return 2 * n; }, 8);
    CHECK(schnorr_hits(Martingale::constant(Rational(1), 16), f, a) == std::vector<std::size_t>{0});

    // (3/2)^(2n+1) > n for every n: all checkpoints inside |A| hit.
    CHECK(schnorr_hits(strategies::coincidence_martingale(a), f, a) ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});

    const BinaryString doubled = BinaryString::parse("00111100110000111100");
    const BoundFunction g = BoundFunction::from([](std::size_t n) { return 2 * n + 1; }, 10);
    CHECK(schnorr_hits(strategies::pair_doubling_martingale(20), g, doubled) ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

    CHECK_THROWS_AS(BoundFunction({1, 1}), std::invalid_argument);
}

TEST_CASE("table file round trip and errors") {
    std::mt19937_64 rng(3);
    const Martingale m = testing::random_martingale(rng, 3);
    std::stringstream buffer;
    write_table(buffer, m);
    const Martingale back = read_table(buffer);
    CHECK(back.depth() == 3);
    CHECK(back.values() == m.values());

    std::istringstream missing("- 1/1\n0 1/2\n");
    CHECK_THROWS_AS(read_table(missing), ParseError);
    std::istringstream duplicate("- 1/1\n0 1/2\n1 3/2\n0 1/2\n");
    CHECK_THROWS_AS(read_table(duplicate), ParseError);
    std::istringstream garbage("- 1/1\n0 x\n1 1\n");
    CHECK_THROWS_AS(read_table(garbage), ParseError);
    std::istringstream badbits("- 1/1\n2 1\n1 1\n");
    CHECK_THROWS_AS(read_table(badbits), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_table(empty), ParseError);
    std::istringstream commented("# depth 1\n- 1   # root\n0 1/2\n1 3/2\n");
    CHECK(read_table(commented).evaluate(BinaryString::parse("1")) == Rational(3, 2));
}
