#include "cantor/report.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

namespace cantor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

nlohmann::ordered_json to_json(const ReportValue& value) {
    return std::visit(overloaded{[](const Rational& q) { return nlohmann::ordered_json(q.str()); },
                                 [](bool b) { return nlohmann::ordered_json(b); },
                                 [](std::uint64_t n) { return nlohmann::ordered_json(n); },
                                 [](const std::string& s) { return nlohmann::ordered_json(s); }},
                      value);
}

}  // namespace

std::string to_text(const ReportValue& value) {
    return std::visit(overloaded{[](const Rational& q) { return q.str(); },
                                 [](bool b) { return std::string(b ? "true" : "false"); },
                                 [](std::uint64_t n) { return std::to_string(n); },
                                 [](const std::string& s) { return s; }},
                      value);
}

void RunReport::check(const std::string& label, bool holds, const std::string& message) {
    result(label, holds);
    if (!holds) {
        violation(message);
    }
}

void RunReport::write_text(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [name, value] : inputs_) {
        width = std::max(width, name.size());
    }
    for (const auto& [label, value] : results_) {
        width = std::max(width, label.size());
    }
    auto pad = [width](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };

    out << "command: " << command_ << '\n';
    if (!inputs_.empty()) {
        out << "inputs:\n";
        for (const auto& [name, value] : inputs_) {
            out << "  " << pad(name) << value << '\n';
        }
    }
    out << "results:\n";
    for (const auto& [label, value] : results_) {
        out << "  " << pad(label) << to_text(value) << '\n';
    }
    out << "violations: " << violations_.size() << '\n';
    for (const auto& v : violations_) {
        out << "  " << v << '\n';
    }
}

void RunReport::write_json(std::ostream& out) const {
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [name, value] : inputs_) {
        inputs[name] = value;
    }
    doc["inputs"] = inputs;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& [label, value] : results_) {
        results.push_back({{"label", label}, {"value", to_json(value)}});
    }
    doc["results"] = results;
    doc["violations"] = violations_;
    out << doc.dump(2) << '\n';
}

}  // namespace cantor
