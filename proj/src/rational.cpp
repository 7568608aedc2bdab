#include "ragrisk/rational.hpp"

#include <numeric>
#include <regex>
#include <ostream>
#include <stdexcept>

namespace ragrisk {

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = g == 0 ? 0 : numerator / g;
    den_ = g == 0 ? 1 : denominator / g;
}

Rational Rational::parse(const std::string& text) {
    static const std::regex fraction(R"((-?[0-9]+)(?:/([0-9]+))?)");
    static const std::regex decimal(R"((-?)([0-9]*)\.([0-9]{1,15}))");
    std::smatch m;
    try {
        if (std::regex_match(text, m, fraction)) {
            const std::int64_t den = m[2].matched ? std::stoll(m[2].str()) : 1;
            if (den == 0) {
                throw std::invalid_argument("zero denominator");
            }
            return Rational(std::stoll(m[1].str()), den);
        }
        if (std::regex_match(text, m, decimal)) {
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < m[3].length(); ++i) {
                scale *= 10;
            }
            const std::int64_t whole = m[2].length() == 0 ? 0 : std::stoll(m[2].str());
            const std::int64_t magnitude = whole * scale + std::stoll(m[3].str());
            return Rational(m[1].length() != 0 ? -magnitude : magnitude, scale);
        }
    } catch (const std::out_of_range&) {
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument("bad rational literal: '" + text + "'");
}

Rational& Rational::operator+=(const Rational& rhs) {
    const std::int64_t l = std::lcm(den_, rhs.den_);
    *this = Rational(num_ * (l / den_) + rhs.num_ * (l / rhs.den_), l);
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    // cross-reduce first to keep intermediates small
    const std::int64_t g1 = std::gcd(num_, rhs.den_);
    const std::int64_t g2 = std::gcd(rhs.num_, den_);
    const std::int64_t a = g1 == 0 ? num_ : num_ / g1;
    const std::int64_t d = g1 == 0 ? rhs.den_ : rhs.den_ / g1;
    const std::int64_t c = g2 == 0 ? rhs.num_ : rhs.num_ / g2;
    const std::int64_t b = g2 == 0 ? den_ : den_ / g2;
    *this = Rational(a * c, b * d);
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) {
        throw std::domain_error("division by zero rational");
    }
    return *this *= Rational(rhs.den_, rhs.num_);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    // denominators are positive, so cross multiplication preserves order
    return lhs.num_ * rhs.den_ <=> rhs.num_ * lhs.den_;
}

std::string display_round(const Rational& x) {
    if (x.num() < 0) {
        throw std::domain_error("display_round expects a non-negative value");
    }
    // floor(100x + 1/2) = floor((200 num + den) / (2 den))
    const std::int64_t hundredths = (200 * x.num() + x.den()) / (2 * x.den());
    std::string frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) {
        frac.insert(0, "0");
    }
    return std::to_string(hundredths / 100) + "." + frac;
}

std::string display_signed(const Rational& x) {
    if (x.num() < 0) {
        const std::string magnitude = display_round(-x);
        return magnitude == "0.00" ? magnitude : "-" + magnitude;
    }
    return display_round(x);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num();
    if (r.den() != 1) {
        os << '/' << r.den();
    }
    return os;
}

}  // namespace ragrisk
