#include "cantor/param.hpp"

#include <algorithm>
#include <istream>
#include <stdexcept>

#include "cantor/error.hpp"

namespace cantor::param {

Row::Row(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {
    for (auto s : symbols_) {
        if (s > kAbstain) {
            throw std::invalid_argument("parametrization symbol " + std::to_string(s) + " outside {0,1,2}");
        }
    }
}

Row Row::parse(std::string_view text) {
    std::vector<std::uint8_t> symbols;
    symbols.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '2') {
            throw std::invalid_argument("invalid parametrization symbol '" + std::string(1, ch) + "'");
        }
        symbols.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return Row(std::move(symbols));
}

std::string Row::str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (auto s : symbols_) {
        out.push_back(static_cast<char>('0' + s));
    }
    return out;
}

Parametrization::Parametrization(std::vector<Row> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 1; i < rows_.size(); ++i) {
        if (rows_[i].size() != rows_.front().size()) {
            throw std::invalid_argument("row " + std::to_string(i) + " has depth " + std::to_string(rows_[i].size()) +
                                        ", expected " + std::to_string(rows_.front().size()));
        }
    }
}

bool consistent(const Row& row, const BinaryString& a) {
    if (a.size() < row.size()) {
        throw std::invalid_argument("consistency check needs |A| >= row depth");
    }
    for (std::size_t x = 0; x < row.size(); ++x) {
        if (row[x] != kAbstain && row[x] != a[x]) {
            return false;
        }
    }
    return true;
}

std::size_t hits(const Row& row) {
    return static_cast<std::size_t>(
        std::count_if(row.symbols().begin(), row.symbols().end(), [](std::uint8_t s) { return s != kAbstain; }));
}

Row halve_row(const Row& row) {
    if (row.size() % 2 != 0) {
        throw std::invalid_argument("halve_transform needs even depth, got " + std::to_string(row.size()));
    }
    std::vector<std::uint8_t> out(row.size() / 2);
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = std::min(row[2 * x], row[2 * x + 1]);
    }
    return Row(std::move(out));
}

Parametrization halve_transform(const Parametrization& p) {
    if (p.depth() % 2 != 0) {
        throw std::invalid_argument("halve_transform needs even depth, got " + std::to_string(p.depth()));
    }
    std::vector<Row> rows;
    rows.reserve(p.rows().size());
    for (const auto& row : p.rows()) {
        rows.push_back(halve_row(row));
    }
    return Parametrization(std::move(rows));
}

std::vector<RowMatch> io_match_report(const Parametrization& p, const BinaryString& a) {
    std::vector<RowMatch> report;
    report.reserve(p.rows().size());
    for (const auto& row : p.rows()) {
        report.push_back({consistent(row, a), hits(row)});
    }
    return report;
}

Parametrization read_parametrization(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line.erase(std::remove_if(line.begin(), line.end(),
                                  [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }),
                   line.end());
        if (line.empty()) {
            continue;
        }
        try {
            rows.push_back(Row::parse(line));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        if (rows.back().size() != rows.front().size()) {
            throw ParseError("row depth " + std::to_string(rows.back().size()) + " differs from first row depth " +
                                 std::to_string(rows.front().size()),
                             line_no);
        }
    }
    return Parametrization(std::move(rows));
}

}  // namespace cantor::param
