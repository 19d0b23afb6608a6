#pragma once

// Finite tables of {0,1,2}-valued rows; 2 means "no prediction".

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/binary_string.hpp"

namespace cantor::param {

inline constexpr std::uint8_t kAbstain = 2;

class Row {
public:
    Row() = default;
    /// Throws std::invalid_argument on a symbol outside {0,1,2}.
    explicit Row(std::vector<std::uint8_t> symbols);
    static Row parse(std::string_view text);

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
    [[nodiscard]] const std::vector<std::uint8_t>& symbols() const { return symbols_; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Row&, const Row&) = default;

private:
    std::vector<std::uint8_t> symbols_;
};

class Parametrization {
public:
    Parametrization() = default;
    /// Throws std::invalid_argument unless all rows share one depth.
    explicit Parametrization(std::vector<Row> rows);

    [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }
    [[nodiscard]] std::size_t depth() const { return rows_.empty() ? 0 : rows_.front().size(); }

private:
    std::vector<Row> rows_;
};

/// Every non-2 entry agrees with A. Throws std::invalid_argument if |A| < |row|.
bool consistent(const Row& row, const BinaryString& a);

/// Number of non-2 entries.
std::size_t hits(const Row& row);

/// Q_i(x) = min(P_i(2x), P_i(2x+1)) under 0 < 1 < 2. Throws on odd depth.
Row halve_row(const Row& row);
Parametrization halve_transform(const Parametrization& p);

struct RowMatch {
    bool consistent;
    std::size_t hits;
};

std::vector<RowMatch> io_match_report(const Parametrization& p, const BinaryString& a);

/// One row per line over {0,1,2}; blank lines and '#' comments skipped. Throws ParseError.
Parametrization read_parametrization(std::istream& in);

}  // namespace cantor::param
