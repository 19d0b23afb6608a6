#include "cantor/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

#include "cantor/codec.hpp"
#include "cantor/error.hpp"
#include "cantor/strategies.hpp"

namespace cantor::oracle {

namespace {

void check_guard(std::size_t use, std::size_t guard) {
    if (use > guard) {
        throw GuardError("oracle enumeration over 2^" + std::to_string(use) + " strings exceeds guard 2^" +
                         std::to_string(guard));
    }
}

BinaryString oracle_from_code(std::uint64_t code, std::size_t length) {
    std::vector<std::uint8_t> bits(length);
    for (std::size_t i = 0; i < length; ++i) {
        bits[i] = static_cast<std::uint8_t>((code >> (length - 1 - i)) & 1U);
    }
    return BinaryString(std::move(bits));
}

// Runs body(i) for i in [0, count) over `threads` workers with static
// striping; callers write results into per-index slots only.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

TTFunctional::TTFunctional(std::string name, UseBound use, TraceFn trace, bool savings)
    : name_(std::move(name)), use_(std::move(use)), trace_(std::move(trace)), savings_(savings) {
    if (!use_ || !trace_) {
        throw std::invalid_argument("functional needs a use bound and a trace");
    }
}

TTFunctional TTFunctional::from_rule(std::string name, UseBound use, OracleRule rule) {
    auto trace = [rule = std::move(rule)](const BinaryString& oracle, const BinaryString& sigma) {
        std::vector<Rational> out;
        out.reserve(sigma.size() + 1);
        Rational capital(1);
        out.push_back(capital);
        BinaryString history;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            capital = settle(capital, rule(oracle, history), sigma[i]);
            history.push_back(sigma[i]);
            out.push_back(capital);
        }
        return out;
    };
    return TTFunctional(std::move(name), std::move(use), std::move(trace));
}

TTFunctional constant_functional(const Rational& value) {
    return TTFunctional(
        "constant", [](std::size_t) { return std::size_t{0}; },
        [value](const BinaryString&, const BinaryString& sigma) {
            return std::vector<Rational>(sigma.size() + 1, value);
        });
}

TTFunctional coincidence_functional(std::size_t shift) {
    return TTFunctional::from_rule(
        shift == 0 ? "coincidence" : "coincidence+" + std::to_string(shift),
        [shift](std::size_t n) { return n + shift; },
        [shift](const BinaryString& oracle, const BinaryString& history) {
            return Bet{Rational(1, 2), oracle.at(history.size() + shift)};
        });
}

TTFunctional first_bit_functional() {
    return TTFunctional::from_rule(
        "first-bit", [](std::size_t) { return std::size_t{1}; },
        [](const BinaryString& oracle, const BinaryString&) { return Bet{Rational(1, 2), oracle.at(0)}; });
}

TTFunctional zero_bias_functional() {
    return TTFunctional::from_rule(
        "zero-bias", [](std::size_t n) { return n; },
        [](const BinaryString& oracle, const BinaryString& history) {
            return Bet{oracle.at(history.size()) == 1 ? Rational(1, 2) : Rational(1, 4), 0};
        });
}

TTFunctional savings_functional(const TTFunctional& base) {
    auto trace = [base](const BinaryString& oracle, const BinaryString& sigma) {
        return savings_along_path(base.trace(oracle, sigma));
    };
    return TTFunctional("savings(" + base.name() + ")", [base](std::size_t n) { return base.use(n); },
                        std::move(trace), true);
}

std::vector<std::string> builtin_names() { return {"constant", "coincidence", "first-bit", "zero-bias"}; }

TTFunctional builtin_functional(std::string_view name, std::size_t shift, bool savings) {
    std::optional<TTFunctional> base;
    if (name == "constant") {
        base = constant_functional();
    } else if (name == "coincidence") {
        base = coincidence_functional(shift);
    } else if (name == "first-bit") {
        base = first_bit_functional();
    } else if (name == "zero-bias") {
        base = zero_bias_functional();
    } else {
        throw std::invalid_argument("unknown kernel '" + std::string(name) +
                                    "' (expected constant, coincidence, first-bit or zero-bias)");
    }
    if (shift != 0 && name != "coincidence") {
        throw std::invalid_argument("--shift only applies to the coincidence kernel");
    }
    return savings ? savings_functional(*base) : *base;
}

Rational averaged_value(const TTFunctional& f, const BinaryString& sigma, std::size_t guard) {
    const std::size_t use = f.use(sigma.size());
    check_guard(use, guard);
    Rational sum;
    const std::uint64_t count = std::uint64_t{1} << use;
    for (std::uint64_t code = 0; code < count; ++code) {
        sum += f.value(oracle_from_code(code, use), sigma);
    }
    return sum * Rational::pow2(-static_cast<long>(use));
}

Martingale averaged_martingale(const TTFunctional& f, std::size_t depth, const AverageOptions& options) {
    for (std::size_t n = 0; n <= depth; ++n) {
        check_guard(f.use(n), options.guard);
    }
    if (depth > kMaxTableDepth) {
        throw std::length_error("averaged martingale depth exceeds table limit");
    }
    const std::size_t count = (std::size_t{1} << (depth + 1)) - 1;
    std::vector<Rational> values(count);
    parallel_for(count, options.threads,
                 [&](std::size_t n) { values[n] = averaged_value(f, codec::str_of(n), options.guard); });
    return Martingale::table(depth, std::move(values));
}

BinaryString averaged_adversary(const TTFunctional& f, std::size_t length, std::size_t guard) {
    return strategies::adversary_sequence(
        [&](const BinaryString& sigma) { return averaged_value(f, sigma, guard); }, length);
}

ExceedSet exceed_set(const TTFunctional& f, const BinaryString& b, std::size_t level,
                     const AverageOptions& options) {
    const std::size_t use = f.use(b.size());
    check_guard(use, options.guard);
    const Rational threshold = Rational::pow2(static_cast<long>(level)) + Rational(1);
    const std::uint64_t count = std::uint64_t{1} << use;
    std::vector<std::optional<Rational>> member_final(count);
    parallel_for(count, options.threads, [&](std::size_t code) {
        const std::vector<Rational> trace = f.trace(oracle_from_code(code, use), b);
        if (*std::max_element(trace.begin(), trace.end()) > threshold) {
            member_final[code] = trace.back();
        }
    });
    ExceedSet result;
    result.level = level;
    std::vector<BinaryString> members;
    for (std::uint64_t code = 0; code < count; ++code) {
        if (!member_final[code]) {
            continue;
        }
        members.push_back(oracle_from_code(code, use));
        if (!result.min_member_final || *member_final[code] < *result.min_member_final) {
            result.min_member_final = member_final[code];
        }
    }
    result.members = nulltests::ClopenSet::normalize(std::move(members));
    result.measure = result.members.measure();
    return result;
}

FunctionalReport functional_validate(const TTFunctional& f, std::size_t depth, std::size_t samples,
                                     std::uint64_t seed, std::size_t guard) {
    FunctionalReport report;
    const std::size_t full_use = f.use(depth);
    check_guard(full_use, guard);
    const std::uint64_t count = std::uint64_t{1} << full_use;

    auto safe_value = [&](const BinaryString& oracle, const BinaryString& sigma) -> std::optional<Rational> {
        try {
            return f.value(oracle, sigma);
        } catch (const std::out_of_range& e) {
            report.violations.push_back({oracle, sigma, "use", e.what()});
            return std::nullopt;
        }
    };

    for (std::uint64_t code = 0; code < count; ++code) {
        const BinaryString tau = oracle_from_code(code, full_use);
        for_each_string(depth, [&](const BinaryString& sigma) {
            const auto here = safe_value(tau, sigma);
            if (!here) {
                return;
            }
            if (here->sign() < 0) {
                report.violations.push_back({tau, sigma, "negative", "M = " + here->str()});
            }
            if (sigma.size() == depth) {
                return;
            }
            const auto left = safe_value(tau, sigma.extended(0));
            const auto right = safe_value(tau, sigma.extended(1));
            if (left && right && Rational(2) * *here != *left + *right) {
                report.violations.push_back({tau, sigma, "averaging",
                                             "2M = " + (Rational(2) * *here).str() + " but M(σ0)+M(σ1) = " +
                                                 (*left + *right).str()});
            }
        });
    }

    // Use check: a long random oracle versus one resampled beyond use(|σ|).
    constexpr std::size_t kMargin = 4;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    auto random_bits = [&](std::size_t length) {
        std::vector<std::uint8_t> bits(length);
        for (auto& bit : bits) {
            bit = static_cast<std::uint8_t>(coin(rng));
        }
        return BinaryString(std::move(bits));
    };
    for (std::size_t s = 0; s < samples; ++s) {
        const BinaryString rho = random_bits(full_use + kMargin);
        for_each_string(depth, [&](const BinaryString& sigma) {
            const std::size_t use = f.use(sigma.size());
            const BinaryString other = rho.prefix(use) + random_bits(rho.size() - use);
            const auto a = safe_value(rho, sigma);
            const auto b = safe_value(other, sigma);
            if (a && b && *a != *b) {
                report.violations.push_back({rho, sigma, "use",
                                             "value changed from " + a->str() + " to " + b->str() +
                                                 " when resampling oracle bits beyond " + std::to_string(use)});
            }
        });
    }
    return report;
}

}  // namespace cantor::oracle
