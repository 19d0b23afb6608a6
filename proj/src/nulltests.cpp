#include "cantor/nulltests.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "cantor/error.hpp"

namespace cantor::nulltests {

namespace {

std::string strip(std::string line) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

BinaryString parse_generator(const std::string& text, std::size_t line_no) {
    try {
        return BinaryString::parse(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }
}

}  // namespace

ClopenSet ClopenSet::normalize(std::vector<BinaryString> strings) {
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
    // Sorted shortest first, so any prefix of a string is already decided.
    std::unordered_set<BinaryString> kept;
    ClopenSet result;
    for (auto& s : strings) {
        bool shadowed = false;
        BinaryString prefix;
        for (std::size_t i = 0; i < s.size() && !shadowed; ++i) {
            shadowed = kept.contains(prefix);
            prefix.push_back(s[i]);
        }
        if (!shadowed) {
            kept.insert(s);
            result.generators_.push_back(std::move(s));
        }
    }
    return result;
}

std::size_t ClopenSet::max_length() const {
    std::size_t length = 0;
    for (const auto& g : generators_) {
        length = std::max(length, g.size());
    }
    return length;
}

Rational ClopenSet::measure() const {
    Rational total;
    for (const auto& g : generators_) {
        total += Rational::pow2(-static_cast<long>(g.size()));
    }
    return total;
}

bool ClopenSet::covers(const BinaryString& x) const {
    return std::any_of(generators_.begin(), generators_.end(),
                       [&](const BinaryString& g) { return g.is_prefix_of(x); });
}

ClopenSet set_union(const ClopenSet& lhs, const ClopenSet& rhs) {
    std::vector<BinaryString> all = lhs.generators();
    all.insert(all.end(), rhs.generators().begin(), rhs.generators().end());
    return ClopenSet::normalize(std::move(all));
}

KurtzReport kurtz_validate(const KurtzTest& test) {
    KurtzReport report;
    for (std::size_t i = 0; i < test.levels.size(); ++i) {
        const Rational measure = test.levels[i].measure();
        const Rational bound = Rational::pow2(-static_cast<long>(i));
        if (measure > bound) {
            report.violations.push_back({i, measure, bound});
        }
    }
    return report;
}

EngulfResult engulf_transform(const std::vector<KurtzTest>& rows, std::size_t j, std::size_t i_max) {
    if (rows.size() <= i_max) {
        throw std::invalid_argument("engulf: row " + std::to_string(rows.size()) + " missing (i_max = " +
                                    std::to_string(i_max) + ")");
    }
    EngulfResult result;
    std::vector<BinaryString> generators;
    for (std::size_t i = 0; i <= i_max; ++i) {
        const KurtzTest& row = rows[i];
        if (const KurtzReport report = kurtz_validate(row); !report.ok()) {
            const auto& v = report.violations.front();
            throw std::invalid_argument("engulf: row " + std::to_string(i) + " is not a Kurtz test (level " +
                                        std::to_string(v.level) + " has measure " + v.measure.str() + ")");
        }
        const std::size_t column = i + j + 1;
        if (column >= row.levels.size()) {
            throw std::invalid_argument("engulf: missing cell G(" + std::to_string(i) + "," +
                                        std::to_string(column) + ")");
        }
        const auto& cell = row.levels[column].generators();
        generators.insert(generators.end(), cell.begin(), cell.end());
        result.bound += Rational::pow2(-static_cast<long>(column));
    }
    result.set = ClopenSet::normalize(std::move(generators));
    return result;
}

Rational avoidance_measure(const AvoidanceAssignment& assignment, codec::Family family) {
    std::set<codec::Natural> seen;
    Rational product(1);
    for (const auto& [index, word] : assignment.pairs) {
        if (!seen.insert(index).second) {
            throw std::invalid_argument("avoidance: interval index " + std::to_string(index) + " assigned twice");
        }
        const codec::IndexInterval iv = codec::interval(family, index);
        if (word.size() != iv.size()) {
            throw std::invalid_argument("avoidance: word '" + word.str() + "' has length " +
                                        std::to_string(word.size()) + " but |I_" + std::to_string(index) +
                                        "| = " + std::to_string(iv.size()));
        }
        product *= Rational(1) - Rational::pow2(-static_cast<long>(iv.size()));
    }
    return product;
}

codec::Natural dnr_interval_size(codec::Natural e, codec::Natural n) {
    return codec::interval(codec::Family::LogPart, codec::s_index(e, n)).size();
}

DnrCoverProduct dnr_cover_product(codec::Natural e, std::size_t n_max) {
    DnrCoverProduct result;
    result.products.reserve(n_max + 1);
    Rational product(1);
    const mpz_class e_factor = mpz_class(64) * mpz_class(static_cast<unsigned long>(e + 1)) *
                               mpz_class(static_cast<unsigned long>(e + 1));
    for (std::size_t n = 0; n <= n_max; ++n) {
        const codec::Natural size = dnr_interval_size(e, n);
        product *= Rational(1) - Rational::pow2(-static_cast<long>(size));
        result.products.push_back(product);
        if (n >= e + 2) {
            mpz_class lhs;
            mpz_ui_pow_ui(lhs.get_mpz_t(), 2, size);
            if (lhs > e_factor * mpz_class(static_cast<unsigned long>(n + 1))) {
                result.comparison_failures.push_back(n);
            }
        }
    }
    return result;
}

namespace {

// Σ_{k=first}^{last} 1/k.
Rational harmonic_range(codec::Natural first, codec::Natural last) {
    Rational sum;
    for (codec::Natural k = first; k <= last; ++k) {
        sum += Rational(1L, static_cast<long>(k));
    }
    return sum;
}

Rational divergence_prefactor(codec::Natural e) {
    const auto base = static_cast<long>(e + 1);
    return Rational(1, 64) / Rational(base * base);
}

}  // namespace

Rational divergence_partial(codec::Natural e, codec::Natural n_max) {
    if (n_max < e + 2) {
        throw std::invalid_argument("divergence_partial needs N >= e+2");
    }
    return divergence_prefactor(e) * harmonic_range(e + 3, n_max + 1);
}

bool divergence_exceeds_log(codec::Natural e, codec::Natural n_max) {
    // Both sides share the prefactor; compare Σ_{k=e+3}^{N+1} 1/k with
    // ln((N+2)/(e+3)) through exp(S) >= Σ_{i<=K} S^i/i!.
    const Rational harmonic = divergence_partial(e, n_max) / divergence_prefactor(e);
    const Rational ratio(static_cast<long>(n_max + 2), static_cast<long>(e + 3));
    Rational term(1);
    Rational series(1);
    constexpr long kMaxTerms = 512;
    for (long i = 1; i <= kMaxTerms; ++i) {
        if (series > ratio) {
            return true;
        }
        term = term * harmonic / Rational(i);
        series += term;
    }
    return series > ratio;
}

ClopenSet read_clopen(std::istream& in) {
    std::vector<BinaryString> generators;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip(line);
        if (text.empty()) {
            continue;
        }
        generators.push_back(parse_generator(text, line_no));
    }
    return ClopenSet::normalize(std::move(generators));
}

KurtzTest read_kurtz(std::istream& in) {
    std::map<std::size_t, std::vector<BinaryString>> levels;
    std::string line;
    std::size_t line_no = 0;
    std::vector<BinaryString>* current = nullptr;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            std::istringstream header(text.substr(1));
            std::string word;
            long long level = -1;
            std::string rest;
            if (!(header >> word) || word != "level" || !(header >> level) || level < 0 ||
                !std::getline(header, rest) || strip(rest) != "]") {
                throw ParseError("expected section header '[level i]', got '" + text + "'", line_no);
            }
            auto [it, inserted] = levels.try_emplace(static_cast<std::size_t>(level));
            if (!inserted) {
                throw ParseError("level " + std::to_string(level) + " declared twice", line_no);
            }
            current = &it->second;
            continue;
        }
        if (current == nullptr) {
            throw ParseError("generator before any '[level i]' section", line_no);
        }
        current->push_back(parse_generator(text, line_no));
    }
    KurtzTest test;
    if (!levels.empty()) {
        test.levels.resize(levels.rbegin()->first + 1);
        for (auto& [level, generators] : levels) {
            test.levels[level] = ClopenSet::normalize(std::move(generators));
        }
    }
    return test;
}

}  // namespace cantor::nulltests
