// include/dylab/bignat.hpp - arbitrary-precision unsigned integer on
// 64-bit limbs, little-endian, no trailing zero limbs (zero = empty vector).
//
// Every method that walks limbs tallies digit ops through cost::tally; see
// cost.hpp for the model.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dylab {

class BigNat {
  public:
    BigNat() = default;
    explicit BigNat(std::uint64_t v) {
        if (v != 0) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }

    // Number of significant bits; 0 for zero.
    std::size_t bit_length() const;

    bool bit(std::size_t i) const;

    // pre: nonzero
    std::size_t trailing_zero_bits() const;

    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

    // -1 / 0 / +1
    static int compare(const BigNat& a, const BigNat& b);

    static BigNat add(const BigNat& a, const BigNat& b);
    // pre: a >= b
    static BigNat sub(const BigNat& a, const BigNat& b);
    static BigNat mul(const BigNat& a, const BigNat& b);

    BigNat shifted_left(std::size_t bits) const;
    BigNat shifted_right(std::size_t bits) const;

    // Keeps only the low `bits` bits.
    BigNat low_bits(std::size_t bits) const;

    // In-place divide by a small divisor, returns the remainder.  pre: d != 0
    std::uint64_t divmod_small(std::uint32_t d);

    bool fits_u64() const { return limbs_.size() <= 1; }
    // pre: fits_u64()
    std::uint64_t to_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    // Most-significant-first binary digits; "0" for zero.
    std::string to_binary() const;
    // Most-significant-first decimal digits; "0" for zero.
    std::string to_decimal() const;

    std::size_t limb_count() const { return limbs_.size(); }

    friend BigNat operator+(const BigNat& a, const BigNat& b) { return add(a, b); }
    friend BigNat operator*(const BigNat& a, const BigNat& b) { return mul(a, b); }
    friend bool operator==(const BigNat& a, const BigNat& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigNat& a, const BigNat& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigNat& a, const BigNat& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigNat& a, const BigNat& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigNat& a, const BigNat& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigNat& a, const BigNat& b) { return compare(a, b) >= 0; }

    // Builds from most-significant-first binary digits ('0'/'1' only).
    static BigNat from_binary(const std::string& bits);

  private:
    std::vector<std::uint64_t> limbs_;
    void strip();  // restore the no-trailing-zero-limb invariant
};

}  // namespace dylab
