#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace normlog {

/// Exact rational over 64-bit integers, always kept in lowest terms with a
/// positive denominator. Arithmetic throws ArithmeticOverflow instead of
/// wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Parses "12", "-3", "0.05" exactly. Returns false on malformed input.
    static bool parse(std::string_view text, Rational& out);

    /// Decimal text when the expansion terminates (always the case for values
    /// built from decimal literals with + - *), otherwise "n/d".
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace normlog
