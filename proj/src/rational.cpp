#include "cantor/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace cantor {

namespace {

bool is_power_of_two(const mpz_class& value) {
    return value > 0 && mpz_popcount(value.get_mpz_t()) == 1;
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        }
    }
    std::string digits(text.front() == '+' ? text.substr(1) : text);
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    value_ = mpq_class(numerator, 1);
    value_ /= denominator;
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class den = parse_integer(den_text, text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::pow2(long exponent) {
    mpz_class power;
    const unsigned long magnitude =
        exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    mpz_ui_pow_ui(power.get_mpz_t(), 2, magnitude);
    if (exponent >= 0) {
        return Rational(power);
    }
    return Rational(mpq_class(mpz_class(1), power));
}

Rational Rational::pow(const Rational& base, unsigned long exponent) {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.value_.get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

bool Rational::is_power_of_two() const {
    if (sign() <= 0) {
        return false;
    }
    return cantor::is_power_of_two(value_.get_num()) && cantor::is_power_of_two(value_.get_den());
}

Rational Rational::floor_power_of_two() const {
    if (sign() <= 0) {
        throw std::domain_error("floor_power_of_two of a non-positive value");
    }
    // 2^(bits(num) - bits(den)) is within a factor 2 of the value; adjust once.
    const long num_bits = static_cast<long>(mpz_sizeinbase(value_.get_num_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(value_.get_den_mpz_t(), 2));
    Rational candidate = pow2(num_bits - den_bits);
    if (candidate > *this) {
        candidate = pow2(num_bits - den_bits - 1);
    }
    return candidate;
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational operator-(const Rational& value) {
    return Rational(mpq_class(-value.value_));
}

std::ostream& operator<<(std::ostream& out, const Rational& value) { return out << value.str(); }

}  // namespace cantor
