#include "cantor/martingale.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cantor/codec.hpp"
#include "cantor/error.hpp"

namespace cantor {

namespace {

std::size_t table_size(std::size_t depth) {
    if (depth > kMaxTableDepth) {
        throw std::length_error("martingale table depth " + std::to_string(depth) + " exceeds limit " +
                                std::to_string(kMaxTableDepth));
    }
    return (std::size_t{1} << (depth + 1)) - 1;
}

// Number of strings of length < depth, i.e. the internal nodes.
std::size_t internal_count(std::size_t depth) { return depth == 0 ? 0 : table_size(depth - 1); }

void apply_transfers(Rational& saved, Rational& active) {
    const Rational cap(kSavingsCap);
    while (active >= cap) {
        active -= Rational(1);
        saved += Rational(1);
    }
}

}  // namespace

Rational settle(const Rational& capital, const Bet& bet, int outcome) {
    const Rational factor = outcome == bet.bit ? Rational(1) + bet.stake : Rational(1) - bet.stake;
    return capital * factor;
}

Martingale Martingale::table(std::size_t depth, std::vector<Rational> values) {
    if (values.size() != table_size(depth)) {
        throw std::invalid_argument("martingale table of depth " + std::to_string(depth) + " needs " +
                                    std::to_string(table_size(depth)) + " values, got " +
                                    std::to_string(values.size()));
    }
    return Martingale(depth, Table{std::move(values)});
}

Martingale Martingale::table(std::size_t depth, const std::function<Rational(const BinaryString&)>& value_of) {
    std::vector<Rational> values;
    values.reserve(table_size(depth));
    for_each_string(depth, [&](const BinaryString& sigma) { values.push_back(value_of(sigma)); });
    return table(depth, std::move(values));
}

Martingale Martingale::strategy(Rational initial, std::size_t depth, BettingRule rule) {
    if (!rule) {
        throw std::invalid_argument("strategy martingale needs a betting rule");
    }
    return Martingale(depth, Strategy{std::move(initial), std::move(rule)});
}

Martingale Martingale::constant(const Rational& value, std::size_t depth) {
    return table(depth, std::vector<Rational>(table_size(depth), value));
}

void Martingale::check_depth(const BinaryString& sigma) const {
    if (sigma.size() > depth_) {
        throw std::out_of_range("query '" + sigma.str() + "' of length " + std::to_string(sigma.size()) +
                                " beyond martingale depth " + std::to_string(depth_));
    }
}

Rational Martingale::evaluate(const BinaryString& sigma) const {
    check_depth(sigma);
    if (const auto* t = std::get_if<Table>(&repr_)) {
        return t->values[codec::num_of(sigma)];
    }
    const auto& s = std::get<Strategy>(repr_);
    Rational capital = s.initial;
    BinaryString history;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        capital = settle(capital, s.rule(history), sigma[i]);
        history.push_back(sigma[i]);
    }
    return capital;
}

std::optional<Bet> Martingale::bet(const BinaryString& history) const {
    if (const auto* s = std::get_if<Strategy>(&repr_)) {
        if (history.size() >= depth_) {
            throw std::out_of_range("bet requested at depth " + std::to_string(history.size()));
        }
        return s->rule(history);
    }
    return std::nullopt;
}

std::vector<Rational> Martingale::values() const {
    if (const auto* t = std::get_if<Table>(&repr_)) {
        return t->values;
    }
    const auto& s = std::get<Strategy>(repr_);
    std::vector<Rational> values(table_size(depth_));
    values[0] = s.initial;
    const std::size_t internal = internal_count(depth_);
    for (std::size_t n = 0; n < internal; ++n) {
        const Bet bet = s.rule(codec::str_of(n));
        values[2 * n + 1] = settle(values[n], bet, 0);
        values[2 * n + 2] = settle(values[n], bet, 1);
    }
    return values;
}

Martingale Martingale::to_table() const {
    if (is_table()) {
        return *this;
    }
    return table(depth_, values());
}

ValidationReport validate(const Martingale& m, std::size_t depth) {
    if (depth > m.depth()) {
        throw std::out_of_range("validation depth " + std::to_string(depth) + " exceeds martingale depth " +
                                std::to_string(m.depth()));
    }
    ValidationReport report;
    const std::vector<Rational> values = m.values();
    const std::size_t internal = internal_count(depth);
    const std::size_t total = table_size(depth);
    for (std::size_t n = 0; n < total; ++n) {
        if (values[n].sign() < 0) {
            report.violations.push_back({codec::str_of(n), "negative", "M = " + values[n].str()});
        }
        if (n >= internal) {
            continue;
        }
        const BinaryString sigma = codec::str_of(n);
        if (auto bet = m.bet(sigma)) {
            if (bet->stake.sign() < 0 || bet->stake > Rational(1) || (bet->bit != 0 && bet->bit != 1)) {
                report.violations.push_back({sigma, "stake", "stake " + bet->stake.str() + " on bit " +
                                                                 std::to_string(bet->bit)});
            }
        }
        const Rational lhs = Rational(2) * values[n];
        const Rational rhs = values[2 * n + 1] + values[2 * n + 2];
        if (lhs != rhs) {
            report.violations.push_back(
                {sigma, "averaging", "2M = " + lhs.str() + " but M(σ0)+M(σ1) = " + rhs.str()});
        }
    }
    return report;
}

std::vector<Rational> capital_trace(const Martingale& m, const BinaryString& path) {
    if (path.size() > m.depth()) {
        throw std::out_of_range("path of length " + std::to_string(path.size()) + " beyond martingale depth " +
                                std::to_string(m.depth()));
    }
    std::vector<Rational> trace;
    trace.reserve(path.size() + 1);
    if (m.is_table()) {
        for (std::size_t n = 0; n <= path.size(); ++n) {
            trace.push_back(m.evaluate(path.prefix(n)));
        }
        return trace;
    }
    BinaryString history;
    Rational capital = m.evaluate(history);
    trace.push_back(capital);
    for (std::size_t i = 0; i < path.size(); ++i) {
        capital = settle(capital, *m.bet(history), path[i]);
        history.push_back(path[i]);
        trace.push_back(capital);
    }
    return trace;
}

Martingale combine_sum(const std::vector<WeightedMartingale>& members) {
    if (members.empty()) {
        throw std::invalid_argument("combine_sum needs at least one member");
    }
    const std::size_t depth = members.front().martingale.depth();
    std::vector<Rational> sum(table_size(depth));
    for (const auto& member : members) {
        if (member.weight.sign() < 0) {
            throw std::invalid_argument("combine_sum weight " + member.weight.str() + " is negative");
        }
        if (member.martingale.depth() != depth) {
            throw std::invalid_argument("combine_sum members have depths " + std::to_string(depth) + " and " +
                                        std::to_string(member.martingale.depth()));
        }
        const std::vector<Rational> values = member.martingale.values();
        for (std::size_t n = 0; n < sum.size(); ++n) {
            sum[n] += member.weight * values[n];
        }
    }
    return Martingale::table(depth, std::move(sum));
}

SavingsDecomposition savings_decomposition(const Martingale& m) {
    const std::vector<Rational> values = m.values();
    if (values[0].sign() < 0 || values[0] > Rational(1)) {
        throw std::invalid_argument("savings transform needs 0 <= M(λ) <= 1, got " + values[0].str());
    }
    const std::size_t depth = m.depth();
    std::vector<Rational> saved(values.size());
    std::vector<Rational> active(values.size());
    active[0] = values[0];
    const std::size_t internal = internal_count(depth);
    for (std::size_t n = 0; n < internal; ++n) {
        for (std::size_t child = 2 * n + 1; child <= 2 * n + 2; ++child) {
            saved[child] = saved[n];
            active[child] = values[n].is_zero() ? Rational() : active[n] * values[child] / values[n];
            apply_transfers(saved[child], active[child]);
        }
    }
    std::vector<Rational> total(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) {
        total[n] = saved[n] + active[n];
    }
    return {Martingale::table(depth, std::move(total)), std::move(saved), std::move(active)};
}

Martingale savings_transform(const Martingale& m) { return savings_decomposition(m).total; }

std::vector<Rational> savings_along_path(const std::vector<Rational>& prefix_values) {
    std::vector<Rational> out;
    if (prefix_values.empty()) {
        return out;
    }
    if (prefix_values[0].sign() < 0 || prefix_values[0] > Rational(1)) {
        throw std::invalid_argument("savings transform needs 0 <= M(λ) <= 1, got " + prefix_values[0].str());
    }
    out.reserve(prefix_values.size());
    Rational saved;
    Rational active = prefix_values[0];
    out.push_back(active);
    for (std::size_t i = 1; i < prefix_values.size(); ++i) {
        active = prefix_values[i - 1].is_zero() ? Rational() : active * prefix_values[i] / prefix_values[i - 1];
        apply_transfers(saved, active);
        out.push_back(saved + active);
    }
    return out;
}

std::optional<std::size_t> success_at(const Martingale& m, const BinaryString& path, const Rational& threshold) {
    const std::vector<Rational> trace = capital_trace(m, path);
    for (std::size_t n = 0; n < trace.size(); ++n) {
        if (trace[n] >= threshold) {
            return n;
        }
    }
    return std::nullopt;
}

BoundFunction::BoundFunction(std::vector<std::size_t> values) : values_(std::move(values)) {
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] <= values_[i - 1]) {
            throw std::invalid_argument("bound function must be strictly increasing (f(" + std::to_string(i) +
                                        ") <= f(" + std::to_string(i - 1) + "))");
        }
    }
}

BoundFunction BoundFunction::from(const std::function<std::size_t(std::size_t)>& f, std::size_t count) {
    std::vector<std::size_t> values(count);
    for (std::size_t n = 0; n < count; ++n) {
        values[n] = f(n);
    }
    return BoundFunction(std::move(values));
}

std::vector<std::size_t> schnorr_hits(const Martingale& m, const BoundFunction& f, const BinaryString& path) {
    const std::size_t reach = std::min(path.size(), m.depth());
    const std::vector<Rational> trace = capital_trace(m, path.prefix(reach));
    std::vector<std::size_t> hits;
    for (std::size_t n = 0; n < f.size(); ++n) {
        const std::size_t checkpoint = f(n) + 1;
        if (checkpoint > reach) {
            break;
        }
        if (trace[checkpoint] > Rational(static_cast<long>(n))) {
            hits.push_back(n);
        }
    }
    return hits;
}

Martingale read_table(std::istream& in) {
    std::map<BinaryString, Rational> records;
    std::string line;
    std::size_t line_no = 0;
    std::size_t depth = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string key;
        std::string value;
        if (!(fields >> key)) {
            continue;
        }
        if (!(fields >> value)) {
            throw ParseError("expected '<bits> <num>/<den>', missing value", line_no);
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError("unexpected trailing field '" + extra + "'", line_no);
        }
        BinaryString sigma;
        Rational q;
        try {
            sigma = BinaryString::parse(key);
            q = Rational::parse(value);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        if (sigma.size() > kMaxTableDepth) {
            throw ParseError("string longer than table depth limit", line_no);
        }
        if (!records.emplace(sigma, q).second) {
            throw ParseError("duplicate record for '" + sigma.str() + "'", line_no);
        }
        depth = std::max(depth, sigma.size());
    }
    if (records.empty()) {
        throw ParseError("martingale table is empty");
    }
    if (records.size() != table_size(depth)) {
        for (std::size_t n = 0; n < table_size(depth); ++n) {
            if (!records.contains(codec::str_of(n))) {
                throw ParseError("missing record for '" + codec::str_of(n).str() + "' (depth " +
                                 std::to_string(depth) + ")");
            }
        }
    }
    std::vector<Rational> values;
    values.reserve(records.size());
    for (auto& [sigma, q] : records) {
        values.push_back(std::move(q));
    }
    return Martingale::table(depth, std::move(values));
}

void write_table(std::ostream& out, const Martingale& m) {
    const std::vector<Rational> values = m.values();
    for (std::size_t n = 0; n < values.size(); ++n) {
        out << codec::str_of(n).str() << ' ' << values[n].str() << '\n';
    }
}

}  // namespace cantor
