// tests/helpers.hpp - independent arithmetic mirrors and generators.
//
// Tests check the hand-rolled kernel against boost::multiprecision, which
// shares no code with it.  Conversions go through binary digit strings so
// the only shared surface is the digit alphabet.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>

#include "dylab/bignat.hpp"
#include "dylab/dyadic.hpp"

namespace testutil {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

inline dylab::Dyadic dy(const std::string& lit) {
    return dylab::Dyadic::from_string(lit);
}

// cpp_int built digit by digit, independently of BigNat's limb logic.
inline cpp_int int_from_binary(const std::string& bits) {
    cpp_int v = 0;
    for (char c : bits) v = v * 2 + (c - '0');
    return v;
}

inline cpp_int mirror(const dylab::BigNat& a) {
    return int_from_binary(a.to_binary());
}

inline cpp_rational rat(const dylab::Dyadic& d) {
    cpp_rational m = mirror(d.mantissa());
    if (d.sign() < 0) m = -m;
    std::int64_t e = d.exponent();
    cpp_int p = cpp_int(1) << (std::uint64_t)(e < 0 ? -e : e);
    return e >= 0 ? m * p : m / cpp_rational(p);
}

inline cpp_int rat_floor(const cpp_rational& q) {
    cpp_int num = boost::multiprecision::numerator(q);
    cpp_int den = boost::multiprecision::denominator(q);  // > 0
    cpp_int quo = num / den;                               // toward zero
    if (num < 0 && quo * den != num) --quo;
    return quo;
}

inline BigFloat big_float(const dylab::Dyadic& d) {
    BigFloat m(mirror(d.mantissa()).str());
    if (d.sign() < 0) m = -m;
    return m * boost::multiprecision::pow(BigFloat(2), (int)d.exponent());
}

using Rng = std::mt19937_64;

inline std::string random_bits(Rng& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
    std::size_t n = len_dist(rng);
    std::string s(n, '0');
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& c : s) c = char('0' + bit(rng));
    if (s[0] == '0') s[0] = '1';
    return s;
}

inline dylab::BigNat random_bignat(Rng& rng, std::size_t max_bits) {
    if (std::uniform_int_distribution<int>(0, 15)(rng) == 0)
        return dylab::BigNat();
    return dylab::BigNat::from_binary(random_bits(rng, max_bits));
}

inline dylab::Dyadic random_dyadic(Rng& rng, std::size_t max_bits,
                                   std::int64_t max_abs_exp,
                                   bool allow_negative = true) {
    if (std::uniform_int_distribution<int>(0, 15)(rng) == 0)
        return dylab::Dyadic();
    std::string bits = random_bits(rng, max_bits);
    bits.back() = '1';  // odd mantissa
    std::uniform_int_distribution<std::int64_t> ed(-max_abs_exp, max_abs_exp);
    int sign = allow_negative && std::uniform_int_distribution<int>(0, 1)(rng)
                   ? -1
                   : +1;
    return dylab::Dyadic::make(sign, dylab::BigNat::from_binary(bits), ed(rng));
}

// Nonnegative dyadic, handy for witness domains.
inline dylab::Dyadic random_point(Rng& rng, std::size_t max_bits,
                                  std::int64_t max_abs_exp) {
    return random_dyadic(rng, max_bits, max_abs_exp, false);
}

}  // namespace testutil
