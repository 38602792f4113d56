// include/dylab/dyadic.hpp - exact dyadic rationals in lowest form.
//
// value = sign * mantissa * 2^exponent with mantissa odd, except zero which
// is (+, 0, 0).  Exponents live in int64; every quantity the lab produces
// stays far inside that range (guarded).
//
// The canonical literal over {0,1,-,.} is  ['-'] bits ['.' bits]  with no
// leading integer zeros (except a single "0") and no trailing fractional
// zeros; "-0" and "0.0" are rejected.  tau* maps 0->00, 1->11, '-'->01,
// '.'->10, so len(d) = 2 * (symbol count of the literal).
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dylab/bignat.hpp"

namespace dylab {

class Dyadic {
  public:
    Dyadic() = default;  // zero
    Dyadic(std::int64_t v);

    // Normalizes: strips factors of two out of the mantissa, canonicalizes
    // zero.  sign is ignored for zero mantissas.
    static Dyadic make(int sign, BigNat mantissa, std::int64_t exponent);

    // 2^e
    static Dyadic power_of_two(std::int64_t e);

    // Parses a canonical binary literal; throws MalformedLiteral on grammar
    // violations and NotLowestForm on non-canonical spellings.
    static Dyadic from_string(std::string_view literal);

    std::string to_string() const;

    int sign() const { return sign_; }
    const BigNat& mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }

    bool is_zero() const { return mant_.is_zero(); }
    bool is_integer() const { return exp_ >= 0 || is_zero(); }
    std::uint64_t fractional_bits() const {
        return exp_ < 0 ? (std::uint64_t)(-exp_) : 0;
    }

    static int compare(const Dyadic& a, const Dyadic& b);

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic operator-() const;
    Dyadic abs() const;

    // Largest integer <= value, as an integer-valued dyadic.
    Dyadic floor() const;
    // floor(2^n * value) / 2^n: the canonical 2^-n approximation from below.
    Dyadic round_to_precision(std::uint32_t n) const;

    // pre: is_integer(), 0 <= value, fits in uint64.
    std::uint64_t to_u64() const;
    bool fits_u64() const;

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

  private:
    int sign_ = +1;  // +1 or -1; zero always +1
    BigNat mant_;
    std::int64_t exp_ = 0;
};

// pre: d > 0
std::int64_t floor_log2(const Dyadic& d);
std::int64_t ceil_log2(const Dyadic& d);

// Encoded length len(d): twice the symbol count of the canonical literal.
std::uint64_t len(const Dyadic& d);

// tau* codes: '0'/'1' strings of even length.
std::string tau_star_encode(const Dyadic& d);
Dyadic tau_star_decode(std::string_view bits);

// Correctly rounded decimal rendering.  Returns "= <digits>" when the
// (always finite) decimal expansion is short enough to print exactly,
// otherwise "≈ <12 significant digits>" rounded to nearest, ties to even.
std::string to_decimal_string(const Dyadic& d);

}  // namespace dylab
