#pragma once

// Exact rational numbers for capital and measure values.
//
// A thin value type over GMP's mpq_class. Every value is kept canonical
// (gcd 1, positive denominator) so equality is structural and the text
// form "num/den" is unique.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cantor {

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);
    explicit Rational(const mpz_class& integer) : value_(integer) {}

    /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on bad text
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    /// 2^exponent for any signed exponent.
    static Rational pow2(long exponent);
    /// base^exponent, exponent >= 0.
    static Rational pow(const Rational& base, unsigned long exponent);

    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    /// True when the value is 2^k for some integer k (positive values only).
    [[nodiscard]] bool is_power_of_two() const;

    /// Largest power of two that is <= this value. Requires a positive value.
    [[nodiscard]] Rational floor_power_of_two() const;

    /// "num/den", always with the denominator (also for integers).
    [[nodiscard]] std::string str() const;

    /// Lossy, for display only.
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& value);

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return lhs.value_ == rhs.value_;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& out, const Rational& value);

}  // namespace cantor
