#include "cantor/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cantor/codec.hpp"
#include "cantor/error.hpp"
#include "cantor/martingale.hpp"
#include "cantor/nulltests.hpp"
#include "cantor/oracle.hpp"
#include "cantor/param.hpp"
#include "cantor/report.hpp"
#include "cantor/strategies.hpp"

namespace cantor::cli {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::array kSubcommands = {"codec",  "validate", "trace",  "adversary", "average", "exceed",
                                     "measure", "engulf",  "dnr-cover", "param", "budget"};

struct GlobalOptions {
    bool json = false;
    unsigned threads = 1;
    std::size_t guard = oracle::kDefaultGuard;
};

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read file '" + path + "'");
    }
    return in;
}

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader) {
    std::ifstream in = open_file(path);
    try {
        return reader(in);
    } catch (const ParseError& e) {
        throw InputError("format error in '" + path + "': " + e.what());
    }
}

BinaryString parse_bits(const std::string& text) {
    try {
        return BinaryString::parse(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Rational parse_rational(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

std::string rank_label(const std::string& fn, const BinaryString& sigma) { return fn + "(" + sigma.str() + ")"; }

// --- martingale sources ---------------------------------------------------

struct SourceOptions {
    std::string table;
    std::string strategy;
    std::string ref;
    std::optional<std::size_t> depth;
    bool savings = false;
};

void add_source_options(CLI::App* sub, SourceOptions& opts) {
    sub->add_option("--table", opts.table, "martingale table file");
    sub->add_option("--strategy", opts.strategy, "built-in strategy: constant, coincidence, pair-doubling");
    sub->add_option("--ref", opts.ref, "reference bits for the coincidence strategy");
    sub->add_option("--depth", opts.depth, "depth for constant / pair-doubling strategies");
    sub->add_flag("--savings", opts.savings, "apply the savings transform");
}

Martingale load_source(const SourceOptions& opts) {
    std::optional<Martingale> m;
    if (!opts.table.empty() && !opts.strategy.empty()) {
        throw InputError("give either --table or --strategy, not both");
    }
    if (!opts.table.empty()) {
        m = read_file<Martingale>(opts.table, [](std::istream& in) { return read_table(in); });
    } else if (opts.strategy == "coincidence") {
        m = strategies::coincidence_martingale(parse_bits(opts.ref.empty() ? "-" : opts.ref));
    } else if (opts.strategy == "pair-doubling") {
        if (!opts.depth) {
            throw InputError("pair-doubling needs --depth");
        }
        m = strategies::pair_doubling_martingale(*opts.depth);
    } else if (opts.strategy == "constant") {
        if (!opts.depth) {
            throw InputError("constant needs --depth");
        }
        m = Martingale::constant(Rational(1), *opts.depth);
    } else if (opts.strategy.empty()) {
        throw InputError("no martingale given (use --table or --strategy)");
    } else {
        throw InputError("unknown strategy '" + opts.strategy + "'");
    }
    if (opts.savings) {
        m = savings_transform(*m);
    }
    return *m;
}

void report_validation(RunReport& report, const ValidationReport& validation) {
    report.result("martingale violations", static_cast<std::uint64_t>(validation.violations.size()));
    for (const auto& v : validation.violations) {
        report.violation(v.kind + " at '" + v.at.str() + "': " + v.detail);
    }
}

// --- oracle functionals ---------------------------------------------------

struct KernelOptions {
    std::string kernel = "coincidence";
    std::size_t shift = 0;
    bool savings = false;
};

void add_kernel_options(CLI::App* sub, KernelOptions& opts) {
    sub->add_option("--kernel", opts.kernel, "constant, coincidence, first-bit, zero-bias")->capture_default_str();
    sub->add_option("--shift", opts.shift, "oracle look-ahead of the coincidence kernel")->capture_default_str();
    sub->add_flag("--savings", opts.savings, "savings-transform every M^τ");
}

oracle::TTFunctional load_kernel(const KernelOptions& opts) {
    try {
        return oracle::builtin_functional(opts.kernel, opts.shift, opts.savings);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

// --- subcommands ----------------------------------------------------------

struct CodecOptions {
    std::vector<std::string> nums;
    std::vector<std::uint64_t> strs;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> s_indices;
    std::vector<std::pair<std::string, std::uint64_t>> intervals;
    std::vector<std::uint64_t> parities;
};

void run_codec(const CodecOptions& opts, RunReport& report) {
    if (opts.nums.empty() && opts.strs.empty() && opts.pairs.empty() && opts.s_indices.empty() &&
        opts.intervals.empty() && opts.parities.empty()) {
        throw InputError("codec: no operation requested (use --num, --str, --pair, --s, --interval, --parity)");
    }
    for (const auto& text : opts.nums) {
        const BinaryString sigma = parse_bits(text);
        const codec::Natural n = codec::num_of(sigma);
        report.result(rank_label("num", sigma), n);
        const mpz_class lo = (mpz_class(1) << static_cast<mp_bitcnt_t>(sigma.size())) - 1;
        const mpz_class hi = (mpz_class(1) << static_cast<mp_bitcnt_t>(sigma.size() + 1)) - 2;
        const mpz_class value(std::to_string(n));
        report.check(rank_label("num bounds", sigma), lo <= value && value <= hi,
                     "num(" + sigma.str() + ") outside [2^|σ|-1, 2^(|σ|+1)-2]");
    }
    for (auto n : opts.strs) {
        report.result("str(" + std::to_string(n) + ")", codec::str_of(n));
    }
    for (const auto& [a, b] : opts.pairs) {
        const std::string args = std::to_string(a) + "," + std::to_string(b);
        report.result("pair(" + args + ")", codec::pair(a, b));
        report.result("pair word(" + args + ")", codec::pair_word(a, b));
    }
    for (const auto& [a, b] : opts.s_indices) {
        const std::string args = std::to_string(a) + "," + std::to_string(b);
        const codec::Natural s = codec::s_index(a, b);
        const mpz_class a1 = mpz_class(std::to_string(a)) + 1;
        const mpz_class b1 = mpz_class(std::to_string(b)) + 1;
        const mpz_class bound = 8 * a1 * a1 * b1;
        report.result("s(" + args + ")", s);
        report.result("s(" + args + ") bound", Rational(bound));
        report.check("s(" + args + ") <= 8(a+1)^2(b+1)", mpz_class(std::to_string(s)) <= bound,
                     "s(" + args + ") exceeds 8(a+1)^2(b+1)");
    }
    for (const auto& [family_text, m] : opts.intervals) {
        codec::Family family{};
        try {
            family = codec::parse_family(family_text);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        const codec::IndexInterval iv = codec::interval(family, m);
        const std::string label = std::string(codec::family_name(family)) + " I_" + std::to_string(m);
        report.result(label, std::to_string(iv.lo) + ".." + std::to_string(iv.hi));
        report.result(label + " size", iv.size());
    }
    for (auto x : opts.parities) {
        report.result("parity(" + std::to_string(x) + ")", static_cast<std::uint64_t>(codec::parity(x)));
    }
}

struct ValidateOptions {
    std::string file;
    SourceOptions source;
    std::optional<std::size_t> check_depth;
};

void run_validate(const ValidateOptions& opts, RunReport& report) {
    SourceOptions source = opts.source;
    if (!opts.file.empty()) {
        if (!source.table.empty()) {
            throw InputError("give the table either positionally or with --table");
        }
        source.table = opts.file;
    }
    const Martingale m = load_source(source);
    const std::size_t depth = opts.check_depth.value_or(m.depth());
    if (depth > m.depth()) {
        throw InputError("--check-depth " + std::to_string(depth) + " exceeds martingale depth " +
                         std::to_string(m.depth()));
    }
    report.result("depth", static_cast<std::uint64_t>(depth));
    const ValidationReport validation = validate(m, depth);
    report.result("martingale", validation.ok());
    report_validation(report, validation);
}

struct TraceOptions {
    SourceOptions source;
    std::string path;
    std::string threshold;
    std::vector<std::size_t> bound;
};

void run_trace(const TraceOptions& opts, RunReport& report) {
    const Martingale m = load_source(opts.source);
    const BinaryString path = parse_bits(opts.path);
    if (path.size() > m.depth()) {
        throw InputError("path of length " + std::to_string(path.size()) + " beyond martingale depth " +
                         std::to_string(m.depth()));
    }
    const std::vector<Rational> trace = capital_trace(m, path);
    for (std::size_t n = 0; n < trace.size(); ++n) {
        report.result(rank_label("M", path.prefix(n)), trace[n]);
    }
    if (!opts.threshold.empty()) {
        const Rational threshold = parse_rational(opts.threshold);
        const auto at = success_at(m, path, threshold);
        report.result("success_at", at ? std::to_string(*at) : std::string("none"));
    }
    if (!opts.bound.empty()) {
        BoundFunction f = [&] {
            try {
                return BoundFunction(opts.bound);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }();
        std::string hits;
        for (auto n : schnorr_hits(m, f, path)) {
            hits += (hits.empty() ? "" : ",") + std::to_string(n);
        }
        report.result("schnorr_hits", hits.empty() ? std::string("none") : hits);
    }
}

struct AdversaryOptions {
    SourceOptions source;
    std::optional<std::size_t> length;
};

void run_adversary(const AdversaryOptions& opts, RunReport& report) {
    const Martingale m = load_source(opts.source);
    const std::size_t length = opts.length.value_or(m.depth());
    if (length > m.depth()) {
        throw InputError("--length beyond martingale depth " + std::to_string(m.depth()));
    }
    const BinaryString b = strategies::adversary_sequence(m, length);
    report.result("B", b);
    const std::vector<Rational> trace = capital_trace(m, b);
    bool nonincreasing = true;
    bool bounded = true;
    for (std::size_t n = 0; n < trace.size(); ++n) {
        report.result(rank_label("N", b.prefix(n)), trace[n]);
        nonincreasing = nonincreasing && (n == 0 || trace[n] <= trace[n - 1]);
        bounded = bounded && trace[n] <= trace[0];
    }
    report.check("nonincreasing", nonincreasing, "capital increases along the adversary sequence");
    report.check("bounded by N(-)", bounded, "capital exceeds N(λ) along the adversary sequence");
}

struct AverageOptions {
    KernelOptions kernel;
    std::size_t depth = 0;
    std::vector<std::string> sigmas;
};

void run_average(const AverageOptions& opts, const GlobalOptions& global, RunReport& report) {
    const oracle::TTFunctional f = load_kernel(opts.kernel);
    report.result("functional", f.name());
    if (!opts.sigmas.empty()) {
        for (const auto& text : opts.sigmas) {
            const BinaryString sigma = parse_bits(text);
            report.result(rank_label("N", sigma), oracle::averaged_value(f, sigma, global.guard));
        }
        return;
    }
    const Martingale n = oracle::averaged_martingale(f, opts.depth, {global.guard, global.threads});
    const std::vector<Rational> values = n.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        report.result(rank_label("N", codec::str_of(i)), values[i]);
    }
    const ValidationReport validation = validate(n, n.depth());
    report.result("martingale", validation.ok());
    report_validation(report, validation);
}

struct ExceedOptions {
    KernelOptions kernel;
    std::size_t length = 0;
    std::vector<std::size_t> levels{1, 2, 3, 4};
    std::string path;
};

void run_exceed(const ExceedOptions& opts, const GlobalOptions& global, RunReport& report) {
    const oracle::TTFunctional f = load_kernel(opts.kernel);
    report.result("functional", f.name());
    const BinaryString b =
        opts.path.empty() ? oracle::averaged_adversary(f, opts.length, global.guard) : parse_bits(opts.path);
    report.result("B", b);
    report.result("oracle length", static_cast<std::uint64_t>(f.use(b.size())));
    for (auto level : opts.levels) {
        const oracle::ExceedSet s = oracle::exceed_set(f, b, level, {global.guard, global.threads});
        const std::string name = "S_" + std::to_string(level);
        report.result(name + " members", static_cast<std::uint64_t>(s.members.generators().size()));
        report.result(name + " measure", s.measure);
        const bool within = s.measure <= Rational::pow2(1 - static_cast<long>(level));
        const bool floor_ok = !s.min_member_final ||
                              *s.min_member_final > Rational::pow2(static_cast<long>(level)) + Rational(1) -
                                                        Rational(kSavingsDropBound);
        if (f.is_savings()) {
            report.check(name + " measure <= 2^(1-n)", within, name + " measure " + s.measure.str() + " exceeds 2^(1-n)");
            report.check(name + " members end above floor", floor_ok,
                         name + " member ends at or below 2^n + 1 - " + std::to_string(kSavingsDropBound));
        } else {
            report.result(name + " measure <= 2^(1-n)", within);
        }
        report.result(name + " measure <= 2^-n", s.measure <= Rational::pow2(-static_cast<long>(level)));
    }
}

struct MeasureOptions {
    std::string file;
    std::string kurtz;
};

void run_measure(const MeasureOptions& opts, RunReport& report) {
    if (opts.file.empty() == opts.kurtz.empty()) {
        throw InputError("measure needs exactly one of FILE or --kurtz");
    }
    if (!opts.file.empty()) {
        const auto set =
            read_file<nulltests::ClopenSet>(opts.file, [](std::istream& in) { return nulltests::read_clopen(in); });
        report.result("generators", static_cast<std::uint64_t>(set.generators().size()));
        report.result("measure", set.measure());
        return;
    }
    const auto test =
        read_file<nulltests::KurtzTest>(opts.kurtz, [](std::istream& in) { return nulltests::read_kurtz(in); });
    for (std::size_t i = 0; i < test.levels.size(); ++i) {
        report.result("G_" + std::to_string(i) + " measure", test.levels[i].measure());
    }
    const nulltests::KurtzReport kurtz = nulltests::kurtz_validate(test);
    report.result("kurtz test", kurtz.ok());
    for (const auto& v : kurtz.violations) {
        report.violation("level " + std::to_string(v.level) + " has measure " + v.measure.str() + " > " +
                         v.bound.str());
    }
}

struct EngulfOptions {
    std::vector<std::string> files;
    std::size_t j = 0;
    std::optional<std::size_t> i_max;
};

void run_engulf(const EngulfOptions& opts, RunReport& report) {
    std::vector<nulltests::KurtzTest> rows;
    rows.reserve(opts.files.size());
    for (const auto& file : opts.files) {
        rows.push_back(
            read_file<nulltests::KurtzTest>(file, [](std::istream& in) { return nulltests::read_kurtz(in); }));
    }
    const std::size_t i_max = opts.i_max.value_or(rows.size() - 1);
    nulltests::EngulfResult result;
    try {
        result = nulltests::engulf_transform(rows, opts.j, i_max);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    report.result("i_max", static_cast<std::uint64_t>(i_max));
    report.result("F_j generators", static_cast<std::uint64_t>(result.set.generators().size()));
    report.result("F_j measure", result.set.measure());
    report.result("bound", result.bound);
    report.check("measure <= bound", result.set.measure() <= result.bound, "F_j measure exceeds its bound");
    report.check("bound <= 2^-j", result.bound <= Rational::pow2(-static_cast<long>(opts.j)),
                 "bound exceeds 2^-j");
}

struct DnrOptions {
    std::optional<std::uint64_t> e;
    std::optional<std::size_t> n_max;
    std::vector<std::string> assignments;
    std::string family = "LOGPART";
};

void run_dnr(const DnrOptions& opts, RunReport& report) {
    if (opts.e.has_value() != opts.n_max.has_value()) {
        throw InputError("dnr-cover needs both --e and --N");
    }
    if (!opts.e && opts.assignments.empty()) {
        throw InputError("dnr-cover needs --e/--N or --assign");
    }
    if (opts.e) {
        const auto e = *opts.e;
        const auto n_max = *opts.n_max;
        const nulltests::DnrCoverProduct product = nulltests::dnr_cover_product(e, n_max);
        bool decreasing = true;
        for (std::size_t n = 1; n < product.products.size(); ++n) {
            decreasing = decreasing && product.products[n] < product.products[n - 1];
        }
        report.result("|I_s(e,0)|", nulltests::dnr_interval_size(e, 0));
        report.result("P_N", product.products.back());
        report.check("strictly decreasing", decreasing, "partial products not strictly decreasing");
        report.check("positive", product.products.back().sign() > 0, "partial product not positive");
        report.result("comparison failures", static_cast<std::uint64_t>(product.comparison_failures.size()));
        for (auto n : product.comparison_failures) {
            report.violation("2^|I_s(e,n)| > 64(e+1)^2(n+1) at n = " + std::to_string(n));
        }
        if (n_max >= e + 2) {
            report.result("divergence partial", nulltests::divergence_partial(e, n_max));
            report.check("divergence exceeds log bound", nulltests::divergence_exceeds_log(e, n_max),
                         "harmonic partial sum does not exceed its logarithmic lower bound");
        }
    }
    if (!opts.assignments.empty()) {
        codec::Family family{};
        try {
            family = codec::parse_family(opts.family);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        nulltests::AvoidanceAssignment assignment;
        for (const auto& text : opts.assignments) {
            const auto colon = text.find(':');
            if (colon == std::string::npos || colon == 0) {
                throw InputError("--assign expects m:bits, got '" + text + "'");
            }
            codec::Natural m = 0;
            try {
                std::size_t used = 0;
                m = std::stoull(text.substr(0, colon), &used);
                if (used != colon) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception&) {
                throw InputError("--assign expects m:bits, got '" + text + "'");
            }
            assignment.pairs.emplace_back(m, parse_bits(text.substr(colon + 1)));
        }
        try {
            report.result("avoidance measure", nulltests::avoidance_measure(assignment, family));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
}

struct ParamOptions {
    std::string file;
    std::string set;
    bool halve = false;
};

void run_param(const ParamOptions& opts, RunReport& report) {
    const auto p =
        read_file<param::Parametrization>(opts.file, [](std::istream& in) { return param::read_parametrization(in); });
    const BinaryString a = parse_bits(opts.set);
    if (a.size() < p.depth()) {
        throw InputError("--set is shorter than the parametrization depth " + std::to_string(p.depth()));
    }
    const auto matches = param::io_match_report(p, a);
    for (std::size_t i = 0; i < matches.size(); ++i) {
        report.result("P_" + std::to_string(i) + " consistent", matches[i].consistent);
        report.result("P_" + std::to_string(i) + " hits", static_cast<std::uint64_t>(matches[i].hits));
    }
    if (!opts.halve) {
        return;
    }
    if (p.depth() % 2 != 0) {
        throw InputError("--halve needs even depth, got " + std::to_string(p.depth()));
    }
    const param::Parametrization q = param::halve_transform(p);
    BinaryString half;
    bool doubled = true;
    for (std::size_t x = 0; x < p.depth() / 2; ++x) {
        half.push_back(a[2 * x]);
        doubled = doubled && a[2 * x] == a[2 * x + 1];
    }
    report.result("A doubled", doubled);
    report.result("half sequence", half);
    const auto q_matches = param::io_match_report(q, half);
    for (std::size_t i = 0; i < q_matches.size(); ++i) {
        report.result("Q_" + std::to_string(i), q.rows()[i].str());
        report.result("Q_" + std::to_string(i) + " consistent", q_matches[i].consistent);
        report.result("Q_" + std::to_string(i) + " hits", static_cast<std::uint64_t>(q_matches[i].hits));
        if (doubled && matches[i].consistent) {
            const bool sound = q_matches[i].consistent && 2 * q_matches[i].hits >= matches[i].hits;
            report.check("Q_" + std::to_string(i) + " sound", sound,
                         "row " + std::to_string(i) + ": halving lost consistency or hits");
        }
    }
}

struct BudgetOptions {
    std::size_t k = 0;
    std::vector<std::size_t> interval_sizes;
};

void run_budget(const BudgetOptions& opts, RunReport& report) {
    const codec::BudgetSequence budget = codec::budget_sequence(opts.k);
    bool powers = true;
    bool geometric = true;
    Rational remainder(1, 2);
    for (std::size_t i = 0; i < budget.terms.size(); ++i) {
        report.result("r_" + std::to_string(i), budget.terms[i]);
        powers = powers && budget.terms[i].is_power_of_two();
        remainder -= Rational(static_cast<long>(i + 1)) * budget.terms[i];
        geometric = geometric && remainder.sign() > 0 &&
                    remainder <= Rational::pow(Rational(3, 4), i) * Rational(1, 2);
    }
    report.result("weighted sum", budget.weighted_sum());
    report.result("remainder", budget.remainder);
    report.check("powers of two", powers, "some r_k is not a power of two");
    report.check("sum + remainder = 1/2", budget.weighted_sum() + budget.remainder == Rational(1, 2),
                 "weighted sum plus remainder differs from 1/2");
    report.check("remainder <= (3/4)^k/2", geometric, "remainder exceeds (3/4)^k/2 or is not positive");
    for (auto size : opts.interval_sizes) {
        if (size < 1) {
            throw InputError("--interval-size must be >= 1");
        }
        const strategies::KillingBudget kill = strategies::killing_budget(size, opts.k);
        const std::string label = "L=" + std::to_string(size);
        report.result(label + " requirement kills", kill.requirement_kills);
        report.result(label + " complexity kills", kill.complexity_kills);
        report.result(label + " survivors", kill.survivors);
        report.check(label + " survivors >= 1", kill.survivors >= Rational(1), label + ": no string survives");
    }
}

void echo_inputs(const CLI::App* sub, RunReport& report) {
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") {
            continue;
        }
        std::string joined;
        for (const auto& r : opt->results()) {
            joined += (joined.empty() ? "" : " ") + r;
        }
        std::string name = opt->get_name();
        name.erase(0, name.find_first_not_of('-'));
        report.input(name, opt->get_type_size() == 0 ? "true" : joined);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact martingales, null tests and parametrizations on Cantor space", "cantor"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    GlobalOptions global;
    app.add_flag("--json", global.json, "emit JSON instead of aligned text");
    app.add_option("--threads", global.threads, "worker threads for oracle enumeration")
        ->check(CLI::Range(1U, 256U));
    app.add_option("--guard", global.guard, "maximum oracle length enumerated (2^guard strings)")
        ->check(CLI::Range(std::size_t{0}, std::size_t{30}));

    CodecOptions codec_opts;
    auto* codec_cmd = app.add_subcommand("codec", "string/number codec, pairing, intervals, parity");
    codec_cmd->add_option("--num", codec_opts.nums, "rank of a bit string ('-' for the empty word)");
    codec_cmd->add_option("--str", codec_opts.strs, "string with the given rank");
    codec_cmd->add_option("--pair", codec_opts.pairs, "pairing <a,b>");
    codec_cmd->add_option("--s", codec_opts.s_indices, "s(e,n) = 2<e,n>");
    codec_cmd->add_option("--interval", codec_opts.intervals, "FAMILY m with FAMILY in LOGPART, POW2, POW3");
    codec_cmd->add_option("--parity", codec_opts.parities, "x mod 2");

    ValidateOptions validate_opts;
    auto* validate_cmd = app.add_subcommand("validate", "check the averaging condition exactly");
    validate_cmd->add_option("file", validate_opts.file, "martingale table file");
    add_source_options(validate_cmd, validate_opts.source);
    validate_cmd->add_option("--check-depth", validate_opts.check_depth, "validate only up to this depth");

    TraceOptions trace_opts;
    auto* trace_cmd = app.add_subcommand("trace", "capital along a path");
    add_source_options(trace_cmd, trace_opts.source);
    trace_cmd->add_option("--path", trace_opts.path, "bit string A")->required();
    trace_cmd->add_option("--threshold", trace_opts.threshold, "report the first n with M(A|n) >= q");
    trace_cmd->add_option("--bound", trace_opts.bound, "checkpoints f(0),f(1),... for Schnorr hits")
        ->delimiter(',');

    AdversaryOptions adversary_opts;
    auto* adversary_cmd = app.add_subcommand("adversary", "greedy sequence along which N never gains");
    add_source_options(adversary_cmd, adversary_opts.source);
    adversary_cmd->add_option("--length", adversary_opts.length, "length of B (default: depth)");

    AverageOptions average_opts;
    auto* average_cmd = app.add_subcommand("average", "oracle-averaged martingale N");
    add_kernel_options(average_cmd, average_opts.kernel);
    average_cmd->add_option("--depth", average_opts.depth, "table depth")->capture_default_str();
    average_cmd->add_option("--sigma", average_opts.sigmas, "evaluate N only at these strings");

    ExceedOptions exceed_opts;
    auto* exceed_cmd = app.add_subcommand("exceed", "exceed sets S_n along the adversary of N");
    add_kernel_options(exceed_cmd, exceed_opts.kernel);
    exceed_cmd->add_option("--length", exceed_opts.length, "length of B")->capture_default_str();
    exceed_cmd->add_option("--level", exceed_opts.levels, "levels n")->delimiter(',')->capture_default_str();
    exceed_cmd->add_option("--path", exceed_opts.path, "use this B instead of the adversary");

    MeasureOptions measure_opts;
    auto* measure_cmd = app.add_subcommand("measure", "measure of a clopen set, or Kurtz-test validation");
    measure_cmd->add_option("file", measure_opts.file, "clopen set file");
    measure_cmd->add_option("--kurtz", measure_opts.kurtz, "Kurtz test file");

    EngulfOptions engulf_opts;
    auto* engulf_cmd = app.add_subcommand("engulf", "F_j = union of G_{i,i+j+1} over Kurtz test rows");
    engulf_cmd->add_option("rows", engulf_opts.files, "one Kurtz test file per row i")->required();
    engulf_cmd->add_option("--j", engulf_opts.j, "column offset j")->required();
    engulf_cmd->add_option("--imax", engulf_opts.i_max, "last row used (default: all rows)");

    DnrOptions dnr_opts;
    auto* dnr_cmd = app.add_subcommand("dnr-cover", "DNR cover products and avoidance measures");
    dnr_cmd->add_option("--e", dnr_opts.e, "index e");
    dnr_cmd->add_option("--N", dnr_opts.n_max, "last n of the partial product");
    dnr_cmd->add_option("--assign", dnr_opts.assignments, "m:bits forbidden word on I_m");
    dnr_cmd->add_option("--family", dnr_opts.family, "interval family for --assign")->capture_default_str();

    ParamOptions param_opts;
    auto* param_cmd = app.add_subcommand("param", "consistency and hits of a {0,1,2} parametrization");
    param_cmd->add_option("file", param_opts.file, "parametrization file")->required();
    param_cmd->add_option("--set", param_opts.set, "bit string A")->required();
    param_cmd->add_flag("--halve", param_opts.halve, "also report Q_i(x) = min(P_i(2x), P_i(2x+1))");

    BudgetOptions budget_opts;
    auto* budget_cmd = app.add_subcommand("budget", "power-of-two budget r_k and killing counts");
    budget_cmd->add_option("--k", budget_opts.k, "last index k")->required();
    budget_cmd->add_option("--interval-size", budget_opts.interval_sizes, "interval sizes for the killing budget");

    if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
        std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
        err << "error: unknown subcommand '" << args.front() << "'\n";
        return kExitBadInput;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunReport report(sub->get_name());
    echo_inputs(sub, report);
    if (app.count("--guard") > 0) {
        report.input("guard", std::to_string(global.guard));
    }

    const std::map<std::string, std::function<void()>> handlers{
        {"codec", [&] { run_codec(codec_opts, report); }},
        {"validate", [&] { run_validate(validate_opts, report); }},
        {"trace", [&] { run_trace(trace_opts, report); }},
        {"adversary", [&] { run_adversary(adversary_opts, report); }},
        {"average", [&] { run_average(average_opts, global, report); }},
        {"exceed", [&] { run_exceed(exceed_opts, global, report); }},
        {"measure", [&] { run_measure(measure_opts, report); }},
        {"engulf", [&] { run_engulf(engulf_opts, report); }},
        {"dnr-cover", [&] { run_dnr(dnr_opts, report); }},
        {"param", [&] { run_param(param_opts, report); }},
        {"budget", [&] { run_budget(budget_opts, report); }},
    };

    try {
        handlers.at(sub->get_name())();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << " (raise --guard)\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "error: " << sub->get_name() << ": " << e.what() << '\n';
        return kExitBadInput;
    }

    if (global.json) {
        report.write_json(out);
    } else {
        report.write_text(out);
    }
    return report.ok() ? kExitOk : kExitViolation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace cantor::cli
