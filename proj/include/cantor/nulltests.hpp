#pragma once

// Clopen subsets of Cantor space, Kurtz tests and their Schnorr-style
// union, and the measure computations behind the DNR cover.

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/codec.hpp"
#include "cantor/rational.hpp"

namespace cantor::nulltests {

/// Finite union of cylinders [g], stored as a length-lex sorted antichain.
class ClopenSet {
public:
    ClopenSet() = default;

    /// Drops duplicates and every string having a proper prefix in the input.
    static ClopenSet normalize(std::vector<BinaryString> strings);

    [[nodiscard]] const std::vector<BinaryString>& generators() const { return generators_; }
    [[nodiscard]] bool empty() const { return generators_.empty(); }
    [[nodiscard]] std::size_t max_length() const;

    /// Σ 2^-|g|.
    [[nodiscard]] Rational measure() const;

    /// True if some generator is a prefix of x.
    [[nodiscard]] bool covers(const BinaryString& x) const;

    friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

private:
    std::vector<BinaryString> generators_;
};

ClopenSet set_union(const ClopenSet& lhs, const ClopenSet& rhs);

struct KurtzTest {
    std::vector<ClopenSet> levels;  // G_0, G_1, ...
};

struct LevelViolation {
    std::size_t level;
    Rational measure;
    Rational bound;
};

struct KurtzReport {
    std::vector<LevelViolation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// μ(G_i) <= 2^-i for every level.
KurtzReport kurtz_validate(const KurtzTest& test);

struct EngulfResult {
    ClopenSet set;   // F_j
    Rational bound;  // Σ_{i<=i_max} 2^-(i+j+1)
};

/// F_j = ∪_{i<=i_max} G_{i,i+j+1}, rows[i] being the i-th Kurtz test.
/// Throws std::invalid_argument on a missing cell or an invalid row.
EngulfResult engulf_transform(const std::vector<KurtzTest>& rows, std::size_t j, std::size_t i_max);

/// Interval index m of a family paired with the forbidden word on I_m.
struct AvoidanceAssignment {
    std::vector<std::pair<codec::Natural, BinaryString>> pairs;
};

/// μ{B : B↾I_m != σ_m for every pair} = Π (1 - 2^-|I_m|). Throws
/// std::invalid_argument on a repeated index or |σ_m| != |I_m|.
Rational avoidance_measure(const AvoidanceAssignment& assignment, codec::Family family);

struct DnrCoverProduct {
    std::vector<Rational> products;  // P_0..P_N
    /// n >= e+2 for which 2^|I_s(e,n)| <= 64(e+1)^2(n+1) failed.
    std::vector<std::size_t> comparison_failures;
};

/// P_n = Π_{i<=n} (1 - 2^-|I_s(e,i)|) over the LOGPART family.
DnrCoverProduct dnr_cover_product(codec::Natural e, std::size_t n_max);

/// |I_s(e,n)| in the LOGPART family.
codec::Natural dnr_interval_size(codec::Natural e, codec::Natural n);

/// (1/64)(e+1)^-2 Σ_{n=e+2}^{N} 1/(n+1). Throws std::invalid_argument if N < e+2.
Rational divergence_partial(codec::Natural e, codec::Natural n_max);

/// divergence_partial(e,N) > (1/64)(e+1)^-2 ln((N+2)/(e+3)), decided exactly.
bool divergence_exceeds_log(codec::Natural e, codec::Natural n_max);

/// One generator per line, "-" for the empty word, '#' comments. Throws ParseError.
ClopenSet read_clopen(std::istream& in);
/// "[level i]" headers followed by generators; absent levels below the
/// highest header are empty. Throws ParseError.
KurtzTest read_kurtz(std::istream& in);

}  // namespace cantor::nulltests
