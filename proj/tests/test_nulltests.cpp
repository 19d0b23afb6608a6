#include <doctest.h>

#include <set>
#include <sstream>
#include <stdexcept>

#include "cantor/error.hpp"
#include "cantor/nulltests.hpp"
#include "support.hpp"

using namespace cantor;
using namespace cantor::nulltests;

namespace {

std::vector<BinaryString> words(std::initializer_list<const char*> items) {
    std::vector<BinaryString> out;
    for (const char* s : items) {
        out.push_back(BinaryString::parse(s));
    }
    return out;
}

// Fraction of words of length `length` extending some generator.
Rational counted_measure(const std::vector<BinaryString>& gens, std::size_t length) {
    long covered = 0;
    for (const auto& x : all_strings(length)) {
        for (const auto& g : gens) {
            if (g.is_prefix_of(x)) {
                ++covered;
                break;
            }
        }
    }
    return Rational(covered) / Rational::pow2(static_cast<long>(length));
}

// Row i of a maximal array: level k is the single cylinder [0^i 1 0^(k-i-1)]
// when k > i, else [1^k].
KurtzTest maximal_row(std::size_t i, std::size_t levels) {
    KurtzTest t;
    for (std::size_t k = 0; k < levels; ++k) {
        BinaryString g;
        if (k > i) {
            g = BinaryString::repeat(0, i).extended(1) + BinaryString::repeat(0, k - i - 1);
        } else {
            g = BinaryString::repeat(1, k);
        }
        t.levels.push_back(ClopenSet::normalize({g}));
    }
    return t;
}

}  // namespace

TEST_CASE("normalize and measure examples") {
    CHECK(ClopenSet::normalize(words({"0", "00"})).generators() == words({"0"}));
    CHECK(ClopenSet::normalize(words({"0", "10"})).generators() == words({"0", "10"}));
    const ClopenSet full = ClopenSet::normalize(words({"00", "01", "1"}));
    CHECK(full.generators().size() == 3);
    CHECK(full.measure() == Rational(1));
    CHECK(ClopenSet::normalize(words({"-"})).measure() == Rational(1));
    CHECK(ClopenSet::normalize(words({"0", "10"})).measure() == Rational(3, 4));
    CHECK(ClopenSet().measure().is_zero());
    CHECK(ClopenSet::normalize(words({"0", "0", "011"})).generators() == words({"0"}));
    CHECK(ClopenSet::normalize(words({"0", "10"})).covers(BinaryString::parse("101")));
    CHECK_FALSE(ClopenSet::normalize(words({"0", "10"})).covers(BinaryString::parse("11")));
    CHECK(set_union(ClopenSet::normalize(words({"01"})), ClopenSet::normalize(words({"0"}))).generators() ==
          words({"0"}));
}

TEST_CASE("measure matches counting oracle") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> len_dist(0, 10);
    std::uniform_int_distribution<std::size_t> count_dist(0, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BinaryString> gens;
        const std::size_t count = count_dist(rng);
        for (std::size_t i = 0; i < count; ++i) {
            gens.push_back(testing::random_bits(rng, len_dist(rng)));
        }
        const ClopenSet set = ClopenSet::normalize(gens);
        REQUIRE(set.measure() == counted_measure(gens, 10));
        for (std::size_t a = 0; a < set.generators().size(); ++a) {
            for (std::size_t b = 0; b < set.generators().size(); ++b) {
                if (a != b) {
                    REQUIRE_FALSE(set.generators()[a].is_prefix_of(set.generators()[b]));
                }
            }
        }
    }
}

TEST_CASE("kurtz_validate") {
    KurtzTest good;
    for (std::size_t i = 0; i < 6; ++i) {
        good.levels.push_back(ClopenSet::normalize({BinaryString::repeat(1, i)}));
    }
    CHECK(kurtz_validate(good).ok());

    KurtzTest bad{{ClopenSet(), ClopenSet::normalize(words({"-"}))}};
    const KurtzReport report = kurtz_validate(bad);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].level == 1);
    CHECK(report.violations[0].measure == Rational(1));
    CHECK(report.violations[0].bound == Rational(1, 2));

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        KurtzTest t;
        for (std::size_t i = 0; i < 6; ++i) {
            // At most 2^(8-i) words of length 8, hence measure <= 2^-i.
            std::vector<BinaryString> gens;
            const std::size_t count = std::uniform_int_distribution<std::size_t>(0, std::size_t{1} << (8 - i))(rng);
            for (std::size_t c = 0; c < count; ++c) {
                gens.push_back(testing::random_bits(rng, 8));
            }
            t.levels.push_back(ClopenSet::normalize(gens));
        }
        REQUIRE(kurtz_validate(t).ok());
    }
}

TEST_CASE("engulf transform") {
    {
        std::vector<KurtzTest> rows(3, KurtzTest{std::vector<ClopenSet>(6)});
        const EngulfResult r = engulf_transform(rows, 1, 2);
        CHECK(r.set.empty());
        CHECK(r.set.measure().is_zero());
    }
    std::vector<KurtzTest> rows;
    for (std::size_t i = 0; i < 5; ++i) {
        rows.push_back(maximal_row(i, 10));
        REQUIRE(kurtz_validate(rows.back()).ok());
    }
    const EngulfResult f0 = engulf_transform(rows, 0, 2);
    CHECK(f0.bound == Rational(7, 8));
    CHECK(f0.set.measure() == Rational(7, 8));
    for (std::size_t j = 0; j <= 4; ++j) {
        for (std::size_t i_max = 0; i_max <= 4; ++i_max) {
            const EngulfResult r = engulf_transform(rows, j, i_max);
            const Rational expected_bound =
                (Rational(1) - Rational::pow2(-static_cast<long>(i_max + 1))) * Rational::pow2(-static_cast<long>(j));
            REQUIRE(r.bound == expected_bound);
            REQUIRE(r.set.measure() <= r.bound);
        }
    }
    CHECK_THROWS_AS(engulf_transform(rows, 6, 4), std::invalid_argument);
    CHECK_THROWS_AS(engulf_transform(rows, 0, 5), std::invalid_argument);
    std::vector<KurtzTest> broken{KurtzTest{{ClopenSet(), ClopenSet::normalize(words({"-"}))}}};
    CHECK_THROWS_AS(engulf_transform(broken, 0, 0), std::invalid_argument);
}

TEST_CASE("avoidance measure") {
    using codec::Family;
    CHECK(avoidance_measure({}, Family::LogPart) == Rational(1));
    // LOGPART I_0 has size 2, I_1 has size 3.
    const AvoidanceAssignment one{{{0, BinaryString::parse("01")}}};
    CHECK(avoidance_measure(one, Family::LogPart) == Rational(3, 4));
    const AvoidanceAssignment two{{{0, BinaryString::parse("01")}, {1, BinaryString::parse("110")}}};
    CHECK(avoidance_measure(two, Family::LogPart) == Rational(21, 32));
    CHECK_THROWS_AS(avoidance_measure({{{0, BinaryString::parse("01")}, {0, BinaryString::parse("00")}}},
                                      Family::LogPart),
                    std::invalid_argument);
    CHECK_THROWS_AS(avoidance_measure({{{0, BinaryString::parse("0")}}}, Family::LogPart), std::invalid_argument);
}

TEST_CASE("avoidance measure matches enumeration") {
    std::mt19937_64 rng(41);
    for (auto family : {codec::Family::LogPart, codec::Family::Pow2, codec::Family::Pow3}) {
        for (int trial = 0; trial < 20; ++trial) {
            AvoidanceAssignment a;
            std::set<codec::Natural> used;
            std::size_t total = 0;
            for (codec::Natural m = 0; m < 4; ++m) {
                const auto iv = codec::interval(family, m);
                if ((rng() & 1U) == 0 || total + iv.size() > 16) {
                    continue;
                }
                a.pairs.emplace_back(m, testing::random_bits(rng, iv.size()));
                total += iv.size();
            }
            // Enumerate words over the highest covered coordinate.
            codec::Natural top = 0;
            for (const auto& [m, sigma] : a.pairs) {
                top = std::max(top, codec::interval(family, m).hi + 1);
            }
            if (top > 18) {
                continue;
            }
            long good = 0;
            for (const auto& x : all_strings(top)) {
                bool avoids = true;
                for (const auto& [m, sigma] : a.pairs) {
                    const auto iv = codec::interval(family, m);
                    avoids = avoids && x.substr(iv.lo, iv.size()) != sigma;
                }
                good += avoids ? 1 : 0;
            }
            REQUIRE(avoidance_measure(a, family) == Rational(good) / Rational::pow2(static_cast<long>(top)));
        }
    }
}

TEST_CASE("dnr cover product") {
    CHECK(dnr_interval_size(0, 0) == 3);
    const DnrCoverProduct p0 = dnr_cover_product(0, 0);
    REQUIRE(p0.products.size() == 1);
    CHECK(p0.products[0] == Rational(7, 8));
    for (codec::Natural e = 0; e <= 4; ++e) {
        const DnrCoverProduct p = dnr_cover_product(e, 300);
        CHECK(p.comparison_failures.empty());
        for (std::size_t n = 0; n + 1 < p.products.size(); ++n) {
            REQUIRE(p.products[n + 1] < p.products[n]);
            REQUIRE(p.products[n + 1].sign() > 0);
        }
    }
}

TEST_CASE("divergence partial sums") {
    CHECK(divergence_partial(0, 2) == Rational(1, 192));
    Rational harmonic;
    for (long n = 2; n <= 10; ++n) {
        harmonic += Rational(1, n + 1);
    }
    CHECK(divergence_partial(0, 10) == harmonic / Rational(64));
    CHECK_THROWS_AS(divergence_partial(3, 4), std::invalid_argument);
    for (codec::Natural e = 0; e <= 3; ++e) {
        for (codec::Natural n = e + 2; n < 60; ++n) {
            REQUIRE(divergence_partial(e, n + 1) > divergence_partial(e, n));
            REQUIRE(divergence_exceeds_log(e, n));
        }
    }
}

TEST_CASE("clopen and kurtz files") {
    std::istringstream clopen("# set\n0\n10\n\n-\n");
    CHECK(read_clopen(clopen).generators() == words({"-"}));
    std::istringstream bad("0\n12\n");
    CHECK_THROWS_AS(read_clopen(bad), ParseError);

    std::istringstream kurtz("[level 0]\n-\n[level 2]\n00\n");
    const KurtzTest t = read_kurtz(kurtz);
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[1].empty());
    CHECK(t.levels[2].measure() == Rational(1, 4));
    std::istringstream orphan("0\n[level 0]\n");
    CHECK_THROWS_AS(read_kurtz(orphan), ParseError);
    std::istringstream twice("[level 0]\n[level 0]\n");
    CHECK_THROWS_AS(read_kurtz(twice), ParseError);
}
