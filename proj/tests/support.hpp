#pragma once

// Shared generators for unit and acceptance tests.

#include <cstdint>
#include <random>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/martingale.hpp"
#include "cantor/rational.hpp"

namespace cantor::testing {

/// Rational in [0,1] with a small denominator.
inline Rational random_fraction(std::mt19937_64& rng, long max_den = 8) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(0, den);
    return Rational(num_dist(rng), den);
}

/// Valid martingale with M(λ) = initial: each node splits 2M(σ) into
/// shares p and 1-p for a random p in [0,1].
inline Martingale random_martingale(std::mt19937_64& rng, std::size_t depth, const Rational& initial = Rational(1)) {
    std::vector<Rational> values((std::size_t{1} << (depth + 1)) - 1);
    values[0] = initial;
    const std::size_t internal = depth == 0 ? 0 : (std::size_t{1} << depth) - 1;
    for (std::size_t n = 0; n < internal; ++n) {
        const Rational p = random_fraction(rng);
        values[2 * n + 1] = Rational(2) * values[n] * p;
        values[2 * n + 2] = Rational(2) * values[n] - values[2 * n + 1];
    }
    return Martingale::table(depth, std::move(values));
}

inline BinaryString random_bits(std::mt19937_64& rng, std::size_t length) {
    std::bernoulli_distribution coin(0.5);
    BinaryString out;
    for (std::size_t i = 0; i < length; ++i) {
        out.push_back(coin(rng) ? 1 : 0);
    }
    return out;
}

}  // namespace cantor::testing
