#include "cantor/binary_string.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace cantor {

BinaryString::BinaryString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto bit : bits_) {
        if (bit > 1) {
            throw std::invalid_argument("binary string symbol out of range");
        }
    }
}

BinaryString BinaryString::parse(std::string_view text) {
    BinaryString result;
    if (text == "-") {
        return result;
    }
    result.bits_.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("invalid bit '" + std::string(1, ch) + "' in binary string '" +
                                        std::string(text) + "'");
        }
        result.bits_.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return result;
}

BinaryString BinaryString::repeat(int bit, std::size_t count) {
    return BinaryString(std::vector<std::uint8_t>(count, static_cast<std::uint8_t>(bit != 0)));
}

int BinaryString::at(std::size_t index) const {
    if (index >= bits_.size()) {
        throw std::out_of_range("bit index " + std::to_string(index) + " beyond string of length " +
                                std::to_string(bits_.size()));
    }
    return bits_[index];
}

BinaryString BinaryString::prefix(std::size_t length) const {
    if (length > bits_.size()) {
        throw std::out_of_range("prefix longer than string");
    }
    return BinaryString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<long>(length)));
}

BinaryString BinaryString::substr(std::size_t start, std::size_t length) const {
    if (start + length > bits_.size()) {
        throw std::out_of_range("substring beyond string");
    }
    auto first = bits_.begin() + static_cast<long>(start);
    return BinaryString(std::vector<std::uint8_t>(first, first + static_cast<long>(length)));
}

BinaryString BinaryString::extended(int bit) const {
    BinaryString result = *this;
    result.push_back(bit);
    return result;
}

bool BinaryString::is_prefix_of(const BinaryString& other) const {
    return bits_.size() <= other.bits_.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

void BinaryString::push_back(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("bit must be 0 or 1");
    }
    bits_.push_back(static_cast<std::uint8_t>(bit));
}

std::string BinaryString::str() const {
    if (bits_.empty()) {
        return "-";
    }
    std::string out;
    out.reserve(bits_.size());
    for (auto bit : bits_) {
        out.push_back(static_cast<char>('0' + bit));
    }
    return out;
}

BinaryString operator+(BinaryString lhs, const BinaryString& rhs) {
    lhs.bits_.insert(lhs.bits_.end(), rhs.bits_.begin(), rhs.bits_.end());
    return lhs;
}

std::strong_ordering operator<=>(const BinaryString& lhs, const BinaryString& rhs) {
    if (auto c = lhs.bits_.size() <=> rhs.bits_.size(); c != 0) {
        return c;
    }
    return lhs.bits_ <=> rhs.bits_;
}

std::ostream& operator<<(std::ostream& out, const BinaryString& value) { return out << value.str(); }

std::vector<BinaryString> all_strings(std::size_t length) {
    if (length >= 63) {
        throw std::length_error("too many strings to enumerate");
    }
    const std::uint64_t count = std::uint64_t{1} << length;
    std::vector<BinaryString> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint8_t> bits(length);
        for (std::size_t i = 0; i < length; ++i) {
            bits[i] = static_cast<std::uint8_t>((code >> (length - 1 - i)) & 1U);
        }
        out.emplace_back(std::move(bits));
    }
    return out;
}

void for_each_string(std::size_t max_length, const std::function<void(const BinaryString&)>& visit) {
    for (std::size_t length = 0; length <= max_length; ++length) {
        for (const auto& word : all_strings(length)) {
            visit(word);
        }
    }
}

}  // namespace cantor

std::size_t std::hash<cantor::BinaryString>::operator()(const cantor::BinaryString& value) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ value.size();
    for (auto bit : value.bits()) {
        h = (h ^ bit) * 1099511628211ULL;
    }
    return h;
}
