#include "cantor/codec.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace cantor::codec {

namespace {

constexpr Natural kMax = std::numeric_limits<Natural>::max();

__extension__ typedef unsigned __int128 Wide;

Natural narrow(Wide value, const char* what) {
    if (value > kMax) {
        throw std::overflow_error(std::string(what) + " exceeds 64 bits");
    }
    return static_cast<Natural>(value);
}

// Σ_{j=1}^{m} floor(log2 j) = (m+1)K - 2^(K+1) + 2 with K = floor(log2 m).
Wide sum_floor_log2(Natural m) {
    if (m == 0) {
        return 0;
    }
    const auto k = static_cast<Wide>(floor_log2(m));
    return (static_cast<Wide>(m) + 1) * k - (Wide{1} << (k + 1)) + 2;
}

Natural logpart_start(Natural m) {
    return narrow(Wide{2} * m + sum_floor_log2(m), "LOGPART interval start");
}

Natural logpart_size(Natural m) {
    if (m == kMax) {
        throw std::overflow_error("LOGPART interval index exceeds 64 bits");
    }
    return 2 + static_cast<Natural>(floor_log2(m + 1));
}

Natural pow3(unsigned exponent) {
    Wide value = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        value *= 3;
        if (value > kMax) {
            throw std::overflow_error("power of three exceeds 64 bits");
        }
    }
    return static_cast<Natural>(value);
}

}  // namespace

int floor_log2(Natural x) {
    if (x == 0) {
        throw std::domain_error("floor_log2(0)");
    }
    return 63 - __builtin_clzll(x);
}

Natural num_of(const BinaryString& sigma) {
    const std::size_t length = sigma.size();
    if (length > 63) {
        throw std::overflow_error("num_of: string of length " + std::to_string(length) + " exceeds 64 bits");
    }
    Natural value = 0;
    for (std::size_t i = 0; i < length; ++i) {
        value = (value << 1U) | static_cast<Natural>(sigma[i]);
    }
    return ((Natural{1} << length) - 1) + value;
}

BinaryString str_of(Natural n) {
    if (n == kMax) {
        throw std::overflow_error("str_of: argument exceeds representable range");
    }
    const int length = floor_log2(n + 1);
    const Natural value = n + 1 - (Natural{1} << static_cast<unsigned>(length));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((value >> (length - 1 - i)) & 1U);
    }
    return BinaryString(std::move(bits));
}

BinaryString pair_word(Natural a, Natural b) {
    const BinaryString str_a = str_of(a);
    return BinaryString::repeat(1, str_a.size()) + BinaryString::parse("0") + str_a + str_of(b);
}

Natural pair(Natural a, Natural b) { return num_of(pair_word(a, b)); }

Natural s_index(Natural e, Natural n) {
    const Natural p = pair(e, n);
    if (p > kMax / 2) {
        throw std::overflow_error("s_index exceeds 64 bits");
    }
    return 2 * p;
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::LogPart:
            return "LOGPART";
        case Family::Pow2:
            return "POW2";
        case Family::Pow3:
            return "POW3";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "LOGPART") {
        return Family::LogPart;
    }
    if (upper == "POW2") {
        return Family::Pow2;
    }
    if (upper == "POW3") {
        return Family::Pow3;
    }
    throw std::invalid_argument("unknown interval family '" + std::string(text) + "'");
}

IndexInterval interval(Family family, Natural m) {
    switch (family) {
        case Family::LogPart: {
            const Natural lo = logpart_start(m);
            return {family, m, lo, narrow(Wide{lo} + logpart_size(m) - 1, "LOGPART interval end")};
        }
        case Family::Pow2:
            if (m == 0) {
                return {family, 0, 0, 2};
            }
            if (m > 62) {
                throw std::overflow_error("POW2 interval index too large");
            }
            return {family, m, (Natural{1} << m) + 1, Natural{1} << (m + 1)};
        case Family::Pow3:
            if (m == 0) {
                return {family, 0, 0, 2};
            }
            return {family, m, pow3(static_cast<unsigned>(std::min<Natural>(m, 64))),
                    pow3(static_cast<unsigned>(std::min<Natural>(m + 1, 64))) - 1};
    }
    throw std::invalid_argument("unknown interval family");
}

Natural interval_containing(Family family, Natural x) {
    switch (family) {
        case Family::LogPart: {
            // lo(m) >= 2m, so the answer is at most x/2.
            Natural low = 0;
            Natural high = x / 2;
            while (low < high) {
                const Natural mid = low + (high - low + 1) / 2;
                if (logpart_start(mid) <= x) {
                    low = mid;
                } else {
                    high = mid - 1;
                }
            }
            return low;
        }
        case Family::Pow2:
            return x <= 2 ? 0 : static_cast<Natural>(floor_log2(x - 1));
        case Family::Pow3: {
            if (x <= 2) {
                return 0;
            }
            Natural n = 0;
            for (Natural y = x; y >= 3; y /= 3) {
                ++n;
            }
            return n;
        }
    }
    throw std::invalid_argument("unknown interval family");
}

Rational BudgetSequence::weighted_sum() const {
    Rational sum;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        sum += Rational(static_cast<long>(i + 1)) * terms[i];
    }
    return sum;
}

BudgetSequence budget_sequence(std::size_t k) {
    BudgetSequence result;
    result.remainder = Rational(1, 2);
    result.terms.reserve(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
        const Rational weight(static_cast<long>(i + 1));
        const Rational term = (result.remainder / (Rational(2) * weight)).floor_power_of_two();
        result.terms.push_back(term);
        result.remainder -= weight * term;
    }
    return result;
}

}  // namespace cantor::codec
