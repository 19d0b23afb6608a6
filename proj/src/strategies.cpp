#include "cantor/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cantor/codec.hpp"

namespace cantor::strategies {

Martingale coincidence_martingale(const BinaryString& ref) {
    return Martingale::strategy(Rational(1), ref.size(), [ref](const BinaryString& history) {
        return Bet{Rational(1, 2), ref.at(history.size())};
    });
}

Rational capital_lower_bound(std::size_t correct, std::size_t total) {
    if (correct > total) {
        throw std::invalid_argument("capital_lower_bound: correct > total");
    }
    return Rational::pow(Rational(3), correct) * Rational::pow2(-static_cast<long>(total));
}

Martingale pair_doubling_martingale(std::size_t depth) {
    return Martingale::strategy(Rational(1), depth, [](const BinaryString& history) {
        if (history.size() % 2 == 0) {
            return Bet{Rational(0), 0};
        }
        return Bet{Rational(1), history.back()};
    });
}

BinaryString adversary_sequence(const Martingale& n, std::size_t length) {
    if (length > n.depth()) {
        throw std::out_of_range("adversary length " + std::to_string(length) + " beyond martingale depth " +
                                std::to_string(n.depth()));
    }
    return adversary_sequence([&n](const BinaryString& sigma) { return n.evaluate(sigma); }, length);
}

BinaryString adversary_sequence(const std::function<Rational(const BinaryString&)>& value, std::size_t length) {
    BinaryString b;
    for (std::size_t i = 0; i < length; ++i) {
        const Rational zero = value(b.extended(0));
        const Rational one = value(b.extended(1));
        b.push_back(one < zero ? 1 : 0);
    }
    return b;
}

std::vector<Rational> prune_largest(const std::vector<Rational>& values, std::size_t b) {
    if (b < 1 || b > values.size()) {
        throw std::invalid_argument("prune_largest: b = " + std::to_string(b) + " outside [1, " +
                                    std::to_string(values.size()) + "]");
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t lhs, std::size_t rhs) { return values[lhs] > values[rhs]; });
    std::vector<bool> killed(values.size(), false);
    for (std::size_t i = 0; i < b; ++i) {
        killed[order[i]] = true;
    }
    std::vector<Rational> remaining;
    remaining.reserve(values.size() - b);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!killed[i]) {
            remaining.push_back(values[i]);
        }
    }
    return remaining;
}

KillingBudget killing_budget(std::size_t interval_size, std::size_t k_max) {
    if (interval_size < 1) {
        throw std::invalid_argument("killing_budget: interval size must be >= 1");
    }
    const Rational strings = Rational::pow2(static_cast<long>(interval_size));
    KillingBudget budget;
    budget.requirement_kills = strings * codec::budget_sequence(k_max).weighted_sum();
    budget.complexity_kills = Rational::pow2(static_cast<long>(interval_size) - 1) - Rational(1);
    budget.survivors = strings - budget.requirement_kills - budget.complexity_kills;
    return budget;
}

}  // namespace cantor::strategies
