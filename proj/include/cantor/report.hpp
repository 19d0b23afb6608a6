#pragma once

// Machine-readable run reports. Rationals are always written as "num/den".

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cantor/binary_string.hpp"
#include "cantor/rational.hpp"

namespace cantor {

using ReportValue = std::variant<Rational, bool, std::uint64_t, std::string>;

class RunReport {
public:
    explicit RunReport(std::string command) : command_(std::move(command)) {}

    void input(std::string name, std::string value) { inputs_.emplace_back(std::move(name), std::move(value)); }
    void result(std::string label, ReportValue value) { results_.emplace_back(std::move(label), std::move(value)); }
    void result(std::string label, const BinaryString& value) { result(std::move(label), value.str()); }
    void result(std::string label, const char* value) { result(std::move(label), std::string(value)); }
    void violation(std::string message) { violations_.push_back(std::move(message)); }

    /// Records a violation unless `holds`, and the check itself as a result.
    void check(const std::string& label, bool holds, const std::string& message);

    [[nodiscard]] const std::string& command() const { return command_; }
    [[nodiscard]] const std::vector<std::pair<std::string, ReportValue>>& results() const { return results_; }
    [[nodiscard]] const std::vector<std::string>& violations() const { return violations_; }
    [[nodiscard]] bool ok() const { return violations_.empty(); }

    void write_text(std::ostream& out) const;
    void write_json(std::ostream& out) const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, ReportValue>> results_;
    std::vector<std::string> violations_;
};

std::string to_text(const ReportValue& value);

}  // namespace cantor
