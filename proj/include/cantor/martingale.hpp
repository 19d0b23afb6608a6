#pragma once

// Exact martingales over binary strings.
//
// A Martingale is either a TABLE (every string of length <= depth mapped to
// a value, stored by length-lex rank) or a STRATEGY (initial capital plus a
// betting rule, values induced by playing the rule along the string). Both
// have an explicit depth; queries beyond it throw std::out_of_range.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// Stake a fraction of the current capital on the next bit being `bit`.
struct Bet {
    Rational stake;
    int bit = 0;
};

using BettingRule = std::function<Bet(const BinaryString& history)>;

/// Capital after the bet resolves to `outcome`.
Rational settle(const Rational& capital, const Bet& bet, int outcome);

inline constexpr std::size_t kMaxTableDepth = 24;

class Martingale {
public:
    /// values[num_of(σ)] = M(σ) for all |σ| <= depth.
    static Martingale table(std::size_t depth, std::vector<Rational> values);
    static Martingale table(std::size_t depth, const std::function<Rational(const BinaryString&)>& value_of);
    static Martingale strategy(Rational initial, std::size_t depth, BettingRule rule);
    static Martingale constant(const Rational& value, std::size_t depth);

    [[nodiscard]] std::size_t depth() const { return depth_; }
    [[nodiscard]] bool is_table() const { return std::holds_alternative<Table>(repr_); }

    [[nodiscard]] Rational evaluate(const BinaryString& sigma) const;
    [[nodiscard]] Rational operator()(const BinaryString& sigma) const { return evaluate(sigma); }

    /// The bet a STRATEGY places after `history`; nullopt for tables.
    [[nodiscard]] std::optional<Bet> bet(const BinaryString& history) const;

    /// Materialized TABLE with the same values (identity for tables).
    [[nodiscard]] Martingale to_table() const;

    /// All values by length-lex rank, materializing if necessary.
    [[nodiscard]] std::vector<Rational> values() const;

private:
    struct Table {
        std::vector<Rational> values;
    };
    struct Strategy {
        Rational initial;
        BettingRule rule;
    };

    Martingale(std::size_t depth, std::variant<Table, Strategy> repr) : depth_(depth), repr_(std::move(repr)) {}

    void check_depth(const BinaryString& sigma) const;

    std::size_t depth_;
    std::variant<Table, Strategy> repr_;
};

struct Violation {
    BinaryString at;
    std::string kind;  // "averaging", "negative" or "stake"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Every σ (|σ| <= depth) where M is negative, every σ (|σ| < depth) where
/// 2M(σ) != M(σ0) + M(σ1), and every strategy stake outside [0,1].
/// Throws std::out_of_range if depth exceeds M.depth().
ValidationReport validate(const Martingale& m, std::size_t depth);

/// [M(A↾0), ..., M(A↾|A|)].
std::vector<Rational> capital_trace(const Martingale& m, const BinaryString& path);

struct WeightedMartingale {
    Rational weight;
    Martingale martingale;
};

/// Pointwise Σ weight·M. Throws std::invalid_argument on negative weights,
/// an empty list or mismatched depths.
Martingale combine_sum(const std::vector<WeightedMartingale>& members);

/// Working capital above this value moves to savings in units of one.
inline constexpr long kSavingsCap = 2;
/// Along σ ⊑ τ the savings martingale satisfies S(τ) > S(σ) - kSavingsDropBound.
inline constexpr long kSavingsDropBound = 2;

/// S = saved + active, each indexed by length-lex rank.
struct SavingsDecomposition {
    Martingale total;
    std::vector<Rational> saved;
    std::vector<Rational> active;
};

/// Active capital bets proportionally to M; whenever it reaches kSavingsCap
/// one unit is moved to saved (repeatedly). Requires 0 <= M(λ) <= 1.
SavingsDecomposition savings_decomposition(const Martingale& m);
Martingale savings_transform(const Martingale& m);

/// Savings values along a single path, without materializing a table.
/// prefix_values[i] = M(A↾i); returns S(A↾i) for each i.
std::vector<Rational> savings_along_path(const std::vector<Rational>& prefix_values);

/// Least n <= |A| with M(A↾n) >= threshold.
std::optional<std::size_t> success_at(const Martingale& m, const BinaryString& path, const Rational& threshold);

/// Strictly increasing checkpoint function f(0..k).
class BoundFunction {
public:
    /// Throws std::invalid_argument unless strictly increasing.
    explicit BoundFunction(std::vector<std::size_t> values);
    static BoundFunction from(const std::function<std::size_t(std::size_t)>& f, std::size_t count);

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t n) const { return values_.at(n); }

private:
    std::vector<std::size_t> values_;
};

/// All n with f(n) < |A| (and f(n)+1 <= depth) such that M(A↾(f(n)+1)) > n.
std::vector<std::size_t> schnorr_hits(const Martingale& m, const BoundFunction& f, const BinaryString& path);

/// Table file: one "<bits|-> <num>/<den>" record per line; '#' starts a
/// comment. Depth is the longest string present and every string up to it
/// must appear exactly once. Throws ParseError.
Martingale read_table(std::istream& in);
void write_table(std::ostream& out, const Martingale& m);

}  // namespace cantor
