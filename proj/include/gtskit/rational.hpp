#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gtskit {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Arithmetic goes through
/// 128-bit intermediates and throws Error(Overflow) if a reduced result does
/// not fit back into 64 bits.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Smallest integer >= this value.
    std::int64_t ceil() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Renders as `p` or `p/q`.
    std::string str() const;
    /// Parses `p`, `-p`, `p/q`; throws Error(Syntax) on malformed input.
    static Rational parse(std::string_view text);

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gtskit
