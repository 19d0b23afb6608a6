#pragma once

// String/number bijections, pairing, interval partition families and the
// power-of-two budget sequence.
//
// Naturals are 64-bit; any operation whose exact result would not fit
// throws std::overflow_error.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/rational.hpp"

namespace cantor::codec {

using Natural = std::uint64_t;

/// Rank of σ in length-lexicographic order: λ, 0, 1, 00, 01, ...
/// Always 2^|σ| - 1 <= num_of(σ) <= 2^(|σ|+1) - 2.
Natural num_of(const BinaryString& sigma);

/// Inverse of num_of.
BinaryString str_of(Natural n);

/// ⟨a,b⟩ = num(1^|str(a)| 0 str(a) str(b)).
Natural pair(Natural a, Natural b);

/// The word whose rank is pair(a, b).
BinaryString pair_word(Natural a, Natural b);

/// s(e,n) = 2⟨e,n⟩, bounded by 8(e+1)^2(n+1).
Natural s_index(Natural e, Natural n);

/// x mod 2.
inline int parity(Natural x) { return static_cast<int>(x & 1U); }

/// floor(log2(x)) for x >= 1.
int floor_log2(Natural x);

enum class Family {
    LogPart,  ///< |I_m| = 2 + floor(log2(m+1)), consecutive from 0
    Pow2,     ///< I_0 = {0,1,2}, I_n = {2^n+1, ..., 2^(n+1)}
    Pow3,     ///< I_0 = {0,1,2}, I_n = {3^n, ..., 3^(n+1)-1}
};

std::string_view family_name(Family family);
/// Accepts "LOGPART", "POW2", "POW3" (case-insensitive). Throws std::invalid_argument.
Family parse_family(std::string_view text);

struct IndexInterval {
    Family family;
    Natural index;
    Natural lo;
    Natural hi;  // inclusive

    [[nodiscard]] Natural size() const { return hi - lo + 1; }
    [[nodiscard]] bool contains(Natural x) const { return lo <= x && x <= hi; }
    friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

IndexInterval interval(Family family, Natural m);

/// Index of the interval of the family containing x.
Natural interval_containing(Family family, Natural x);

/// r_0..r_k with r_i the largest power of two such that (i+1)·r_i is at most
/// half of what is left of 1/2; remainder is what is still unallocated.
struct BudgetSequence {
    std::vector<Rational> terms;
    Rational remainder;

    /// Σ (i+1)·r_i over the stored terms.
    [[nodiscard]] Rational weighted_sum() const;
};

BudgetSequence budget_sequence(std::size_t k);

}  // namespace cantor::codec
