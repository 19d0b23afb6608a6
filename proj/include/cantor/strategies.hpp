#pragma once

// Concrete betting strategies and the quantitative lemmas that go with them.

#include <cstddef>
#include <functional>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/martingale.hpp"
#include "cantor/rational.hpp"

namespace cantor::strategies {

/// Half the capital on the next bit agreeing with `ref`: ×3/2 on agreement,
/// ×1/2 otherwise. Depth |ref|.
Martingale coincidence_martingale(const BinaryString& ref);

/// 3^correct / 2^total. Requires correct <= total.
Rational capital_lower_bound(std::size_t correct, std::size_t total);

/// No bet at even positions; at odd positions the whole capital on the next
/// bit repeating the previous one. Capital 2^k after k matching pairs.
Martingale pair_doubling_martingale(std::size_t depth);

/// B(n) = the bit minimizing N(B↾n · bit), ties to 0.
BinaryString adversary_sequence(const Martingale& n, std::size_t length);
/// Same rule over any value function defined up to `length`.
BinaryString adversary_sequence(const std::function<Rational(const BinaryString&)>& value, std::size_t length);

/// Drops the b largest values (earliest first among equals) and keeps the
/// rest in their original order. Throws std::invalid_argument unless
/// 1 <= b <= values.size().
std::vector<Rational> prune_largest(const std::vector<Rational>& values, std::size_t b);

struct KillingBudget {
    Rational requirement_kills;  ///< 2^L · Σ_{k<=k_max} (k+1) r_k
    Rational complexity_kills;   ///< 2^(L-1) - 1 descriptions shorter than L-1
    Rational survivors;          ///< 2^L minus both
};

/// Counting bound for strings of an interval of size L. Requires L >= 1.
KillingBudget killing_budget(std::size_t interval_size, std::size_t k_max);

}  // namespace cantor::strategies
