#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace ragrisk {

/// Exact rational number with a positive denominator, always in lowest terms.
///
/// Risk scores are means of eight small integers and products of two such
/// means, so 64-bit numerators and denominators never come close to overflow.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Parses "a", "a/b" or a finite decimal such as "2.999".
    static Rational parse(const std::string& text);

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Fixed two-digit decimal text, rounding half up ("6.625" -> "6.63").
/// Throws std::domain_error for negative input.
std::string display_round(const Rational& x);

/// Like display_round but accepts negatives: the magnitude is rounded and
/// prefixed with '-'.
std::string display_signed(const Rational& x);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ragrisk
