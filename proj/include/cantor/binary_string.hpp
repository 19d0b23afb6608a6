#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// Finite word over {0,1}. Ordered length-lexicographically.
class BinaryString {
public:
    BinaryString() = default;
    explicit BinaryString(std::vector<std::uint8_t> bits);

    /// "0101" style text; "-" (and the empty string) denote the empty word.
    /// Throws std::invalid_argument on any other character.
    static BinaryString parse(std::string_view text);
    static BinaryString repeat(int bit, std::size_t count);

    [[nodiscard]] std::size_t size() const { return bits_.size(); }
    [[nodiscard]] bool empty() const { return bits_.empty(); }

    /// Bounds-checked; throws std::out_of_range.
    [[nodiscard]] int at(std::size_t index) const;
    [[nodiscard]] int operator[](std::size_t index) const { return bits_[index]; }
    [[nodiscard]] int back() const { return bits_.back(); }

    [[nodiscard]] BinaryString prefix(std::size_t length) const;
    [[nodiscard]] BinaryString substr(std::size_t start, std::size_t length) const;
    [[nodiscard]] BinaryString extended(int bit) const;
    [[nodiscard]] bool is_prefix_of(const BinaryString& other) const;

    void push_back(int bit);
    void pop_back() { bits_.pop_back(); }

    [[nodiscard]] const std::vector<std::uint8_t>& bits() const { return bits_; }

    /// "0101"; the empty word prints as "-".
    [[nodiscard]] std::string str() const;

    friend BinaryString operator+(BinaryString lhs, const BinaryString& rhs);
    friend bool operator==(const BinaryString&, const BinaryString&) = default;
    friend std::strong_ordering operator<=>(const BinaryString& lhs, const BinaryString& rhs);

private:
    std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& out, const BinaryString& value);

/// All words of exactly the given length, in lexicographic order.
std::vector<BinaryString> all_strings(std::size_t length);

/// Calls visit(σ) for every word of length <= max_length in length-lex order.
void for_each_string(std::size_t max_length, const std::function<void(const BinaryString&)>& visit);

}  // namespace cantor

template <>
struct std::hash<cantor::BinaryString> {
    std::size_t operator()(const cantor::BinaryString& value) const noexcept;
};
