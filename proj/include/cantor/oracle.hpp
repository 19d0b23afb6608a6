#pragma once

// Truth-table martingale functionals M^E and their oracle average
//
//     N(σ) = Σ_{τ ∈ {0,1}^use(|σ|)} 2^-|τ| M^τ(σ),
//
// together with the exceed sets S_n of oracles whose martingale climbs
// beyond 2^n + 1 along a fixed sequence. Oracle enumeration is exhaustive
// and guarded by a cap on use(|σ|).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/martingale.hpp"
#include "cantor/nulltests.hpp"
#include "cantor/rational.hpp"

namespace cantor::oracle {

inline constexpr std::size_t kDefaultGuard = 20;

using UseBound = std::function<std::size_t(std::size_t)>;
/// [M^τ(σ↾0), ..., M^τ(σ↾|σ|)]; may read only τ↾use(|σ|).
using TraceFn = std::function<std::vector<Rational>(const BinaryString& oracle, const BinaryString& sigma)>;
/// Bet after `history` given the oracle.
using OracleRule = std::function<Bet(const BinaryString& oracle, const BinaryString& history)>;

class TTFunctional {
public:
    TTFunctional(std::string name, UseBound use, TraceFn trace, bool savings = false);

    /// Functional playing `rule` from unit capital.
    static TTFunctional from_rule(std::string name, UseBound use, OracleRule rule);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::size_t use(std::size_t length) const { return use_(length); }
    [[nodiscard]] bool is_savings() const { return savings_; }

    [[nodiscard]] std::vector<Rational> trace(const BinaryString& oracle, const BinaryString& sigma) const {
        return trace_(oracle, sigma);
    }
    [[nodiscard]] Rational value(const BinaryString& oracle, const BinaryString& sigma) const {
        return trace_(oracle, sigma).back();
    }

private:
    std::string name_;
    UseBound use_;
    TraceFn trace_;
    bool savings_;
};

/// M^τ ≡ value, use 0.
TTFunctional constant_functional(const Rational& value = Rational(1));
/// Half stake on bit i equal to τ(i + shift); use(n) = n + shift.
TTFunctional coincidence_functional(std::size_t shift = 0);
/// Half stake on every bit equal to τ(0); use(n) = 1.
TTFunctional first_bit_functional();
/// Stake on bit 0 at position i: 1/2 if τ(i) = 1, else 1/4; use(n) = n.
TTFunctional zero_bias_functional();
/// Per-oracle savings transform of a functional with M^τ(λ) <= 1.
TTFunctional savings_functional(const TTFunctional& base);

/// Names: constant, coincidence, first-bit, zero-bias. Throws std::invalid_argument.
TTFunctional builtin_functional(std::string_view name, std::size_t shift = 0, bool savings = false);
std::vector<std::string> builtin_names();

struct AverageOptions {
    std::size_t guard = kDefaultGuard;
    unsigned threads = 1;
};

/// N(σ) by exhaustive enumeration of τ ∈ {0,1}^use(|σ|). Throws GuardError.
Rational averaged_value(const TTFunctional& f, const BinaryString& sigma, std::size_t guard = kDefaultGuard);

/// TABLE martingale of N up to depth. Results do not depend on threads.
Martingale averaged_martingale(const TTFunctional& f, std::size_t depth, const AverageOptions& options = {});

/// Greedy adversary of N computed pointwise, without a full table.
BinaryString averaged_adversary(const TTFunctional& f, std::size_t length, std::size_t guard = kDefaultGuard);

struct ExceedSet {
    std::size_t level = 0;
    nulltests::ClopenSet members;  // oracle strings of length use(|B|)
    Rational measure;
    /// Smallest M^τ(B) over members; absent when there are none.
    std::optional<Rational> min_member_final;
};

/// {τ ∈ {0,1}^use(|B|) : max_{β ⊑ B} M^τ(β) > 2^n + 1}. Throws GuardError.
ExceedSet exceed_set(const TTFunctional& f, const BinaryString& b, std::size_t level,
                     const AverageOptions& options = {});

struct FunctionalViolation {
    BinaryString oracle;
    BinaryString sigma;
    std::string kind;  // "averaging", "negative", "use"
    std::string detail;
};

struct FunctionalReport {
    std::vector<FunctionalViolation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks averaging and nonnegativity for every τ of length use(depth), and
/// use-respect by resampling the oracle bits beyond use(|σ|).
FunctionalReport functional_validate(const TTFunctional& f, std::size_t depth, std::size_t samples = 8,
                                     std::uint64_t seed = 1, std::size_t guard = kDefaultGuard);

}  // namespace cantor::oracle
