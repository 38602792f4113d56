#include "dylab/dyadic.hpp"

#include <cassert>
#include <cstdlib>
#include <limits>

#include "dylab/cost.hpp"
#include "dylab/errors.hpp"

namespace dylab {

namespace {

// Alignment shifts beyond this many bits would allocate gigabytes; nothing
// in the lab's range needs them.
constexpr std::uint64_t kMaxShiftBits = std::uint64_t{1} << 28;

void check_shift(std::uint64_t bits) {
    if (bits > kMaxShiftBits)
        throw ResourceLimit("exponent alignment of " + std::to_string(bits) +
                            " bits exceeds the resource guard");
}

}  // namespace

Dyadic::Dyadic(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : +1;
    std::uint64_t mag = v < 0 ? (~(std::uint64_t)v + 1) : (std::uint64_t)v;
    *this = make(sign_, BigNat(mag), 0);
}

Dyadic Dyadic::make(int sign, BigNat mantissa, std::int64_t exponent) {
    Dyadic d;
    if (mantissa.is_zero()) return d;
    assert(sign == 1 || sign == -1);
    std::size_t tz = mantissa.trailing_zero_bits();
    if (tz > 0) {
        mantissa = mantissa.shifted_right(tz);
        if (exponent > std::numeric_limits<std::int64_t>::max() - (std::int64_t)tz)
            throw ResourceLimit("exponent overflow");
        exponent += (std::int64_t)tz;
    }
    d.sign_ = sign;
    d.mant_ = std::move(mantissa);
    d.exp_ = exponent;
    return d;
}

Dyadic Dyadic::power_of_two(std::int64_t e) { return make(+1, BigNat(1), e); }

Dyadic Dyadic::from_string(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
        neg = true;
        ++i;
    }
    std::size_t int_start = i;
    while (i < s.size() && (s[i] == '0' || s[i] == '1')) ++i;
    std::string_view int_part = s.substr(int_start, i - int_start);
    if (int_part.empty())
        throw MalformedLiteral("literal \"" + std::string(s) +
                               "\": missing integer digits");
    std::string_view frac_part;
    if (i < s.size()) {
        if (s[i] != '.')
            throw MalformedLiteral("literal \"" + std::string(s) +
                                   "\": unexpected character '" + s[i] + "'");
        ++i;
        std::size_t frac_start = i;
        while (i < s.size() && (s[i] == '0' || s[i] == '1')) ++i;
        if (i != s.size())
            throw MalformedLiteral("literal \"" + std::string(s) +
                                   "\": unexpected character '" + s[i] + "'");
        frac_part = s.substr(frac_start);
        if (frac_part.empty())
            throw MalformedLiteral("literal \"" + std::string(s) +
                                   "\": missing fractional digits");
    }
    if (int_part.size() > 1 && int_part[0] == '0')
        throw NotLowestForm("literal \"" + std::string(s) +
                            "\": leading integer zero");
    if (!frac_part.empty() && frac_part.back() == '0')
        throw NotLowestForm("literal \"" + std::string(s) +
                            "\": trailing fractional zero");
    bool zero = int_part == "0" && frac_part.empty();
    if (zero && neg)
        throw NotLowestForm("literal \"-0\": zero carries no sign");
    std::string digits(int_part);
    digits.append(frac_part);
    BigNat mant = BigNat::from_binary(digits);
    return make(neg ? -1 : +1, std::move(mant), -(std::int64_t)frac_part.size());
}

std::string Dyadic::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (sign_ < 0) out.push_back('-');
    if (exp_ >= 0) {
        out += mant_.to_binary();
        out.append((std::size_t)exp_, '0');
        return out;
    }
    std::uint64_t f = (std::uint64_t)(-exp_);
    check_shift(f);
    BigNat int_part = mant_.shifted_right(f);
    BigNat frac = mant_.low_bits(f);
    out += int_part.to_binary();
    out.push_back('.');
    for (std::uint64_t i = f; i-- > 0;) out.push_back(frac.bit(i) ? '1' : '0');
    return out;
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b.is_zero() ? 0 : -b.sign_;
    if (b.is_zero()) return a.sign_;
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    // Same sign: compare magnitudes via bit positions first.
    std::int64_t hi_a = a.exp_ + (std::int64_t)a.mant_.bit_length();
    std::int64_t hi_b = b.exp_ + (std::int64_t)b.mant_.bit_length();
    int mag;
    if (hi_a != hi_b) {
        cost::tally(1);
        mag = hi_a < hi_b ? -1 : 1;
    } else if (a.exp_ >= b.exp_) {
        check_shift((std::uint64_t)(a.exp_ - b.exp_));
        mag = BigNat::compare(a.mant_.shifted_left((std::size_t)(a.exp_ - b.exp_)),
                              b.mant_);
    } else {
        check_shift((std::uint64_t)(b.exp_ - a.exp_));
        mag = BigNat::compare(a.mant_,
                              b.mant_.shifted_left((std::size_t)(b.exp_ - a.exp_)));
    }
    return a.sign_ > 0 ? mag : -mag;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t e = std::min(a.exp_, b.exp_);
    check_shift((std::uint64_t)(a.exp_ - e));
    check_shift((std::uint64_t)(b.exp_ - e));
    BigNat ma = a.mant_.shifted_left((std::size_t)(a.exp_ - e));
    BigNat mb = b.mant_.shifted_left((std::size_t)(b.exp_ - e));
    if (a.sign_ == b.sign_) return Dyadic::make(a.sign_, BigNat::add(ma, mb), e);
    int c = BigNat::compare(ma, mb);
    if (c == 0) return Dyadic{};
    return c > 0 ? Dyadic::make(a.sign_, BigNat::sub(ma, mb), e)
                 : Dyadic::make(b.sign_, BigNat::sub(mb, ma), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic{};
    if (a.exp_ > 0 && b.exp_ > std::numeric_limits<std::int64_t>::max() - a.exp_)
        throw ResourceLimit("exponent overflow");
    return Dyadic::make(a.sign_ * b.sign_, BigNat::mul(a.mant_, b.mant_),
                        a.exp_ + b.exp_);
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    if (!r.is_zero()) r.sign_ = -r.sign_;
    return r;
}

Dyadic Dyadic::abs() const {
    Dyadic r = *this;
    r.sign_ = +1;
    return r;
}

Dyadic Dyadic::floor() const { return round_to_precision(0); }

Dyadic Dyadic::round_to_precision(std::uint32_t n) const {
    if (is_zero() || exp_ >= -(std::int64_t)n) return *this;
    std::uint64_t shift = (std::uint64_t)(-exp_) - n;
    check_shift(shift);
    BigNat q = mant_.shifted_right(shift);
    if (sign_ < 0 && !mant_.low_bits(shift).is_zero())
        q = BigNat::add(q, BigNat(1));  // floor of a negative: magnitude ceils
    if (q.is_zero()) return Dyadic{};
    return make(sign_, std::move(q), -(std::int64_t)n);
}

bool Dyadic::fits_u64() const {
    if (is_zero()) return true;
    if (sign_ < 0 || exp_ < 0) return false;
    return mant_.bit_length() + (std::uint64_t)exp_ <= 64;
}

std::uint64_t Dyadic::to_u64() const {
    assert(fits_u64());
    if (is_zero()) return 0;
    return mant_.to_u64() << exp_;
}

std::int64_t floor_log2(const Dyadic& d) {
    assert(d.sign() > 0 && !d.is_zero());
    return d.exponent() + (std::int64_t)d.mantissa().bit_length() - 1;
}

std::int64_t ceil_log2(const Dyadic& d) {
    return floor_log2(d) + (d.mantissa().is_one() ? 0 : 1);
}

std::uint64_t len(const Dyadic& d) {
    if (d.is_zero()) return 2;
    std::uint64_t symbols = d.sign() < 0 ? 1 : 0;
    std::uint64_t bl = d.mantissa().bit_length();
    if (d.exponent() >= 0) {
        symbols += bl + (std::uint64_t)d.exponent();
    } else {
        std::uint64_t f = (std::uint64_t)(-d.exponent());
        symbols += (bl > f ? bl - f : 1) + 1 + f;
    }
    return 2 * symbols;
}

std::string tau_star_encode(const Dyadic& d) {
    std::string lit = d.to_string();
    std::string out;
    out.reserve(2 * lit.size());
    for (char c : lit) {
        switch (c) {
            case '0': out += "00"; break;
            case '1': out += "11"; break;
            case '-': out += "01"; break;
            case '.': out += "10"; break;
            default: assert(false);
        }
    }
    cost::tally(out.size());
    return out;
}

Dyadic tau_star_decode(std::string_view bits) {
    if (bits.size() % 2 != 0)
        throw MalformedLiteral("code has odd length " + std::to_string(bits.size()));
    std::string lit;
    lit.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        char a = bits[i], b = bits[i + 1];
        if ((a != '0' && a != '1') || (b != '0' && b != '1'))
            throw MalformedLiteral("code contains a non-bit character");
        if (a == '0' && b == '0') lit.push_back('0');
        else if (a == '1' && b == '1') lit.push_back('1');
        else if (a == '0' && b == '1') lit.push_back('-');
        else lit.push_back('.');
    }
    cost::tally(bits.size());
    try {
        return Dyadic::from_string(lit);
    } catch (const NotLowestForm& e) {
        // Codes of non-canonical literals are malformed codes.
        throw MalformedLiteral(e.what());
    }
}

namespace {

struct DecimalDigits {
    std::string digits;   // significant digits, most significant first
    std::int64_t dec_exp; // value = 0.digits * 10^(dec_exp+1)
    bool exact;
};

// Emits significant decimal digits of |d| until either the expansion ends
// or max_sig digits have been produced (then marks the result inexact).
DecimalDigits decimal_digits(const Dyadic& d, std::size_t max_sig) {
    DecimalDigits r{"", 0, true};
    BigNat int_part, frac;
    std::uint64_t f = d.fractional_bits();
    if (f == 0) {
        int_part = d.exponent() > 0
                       ? d.mantissa().shifted_left((std::size_t)d.exponent())
                       : d.mantissa();
    } else {
        int_part = d.mantissa().shifted_right(f);
        frac = d.mantissa().low_bits(f);
    }
    std::string int_dec = int_part.is_zero() ? "" : int_part.to_decimal();
    r.dec_exp = (std::int64_t)int_dec.size() - 1;
    r.digits = int_dec;
    bool leading = int_dec.empty();
    if (leading) r.dec_exp = -1;
    while (!frac.is_zero()) {
        if (r.digits.size() >= max_sig) {
            r.exact = false;
            break;
        }
        frac = BigNat::mul(frac, BigNat(10));
        BigNat whole = frac.shifted_right(f);
        frac = frac.low_bits(f);
        char digit = char('0' + (whole.is_zero() ? 0 : whole.to_u64()));
        if (leading && digit == '0') {
            --r.dec_exp;
            continue;
        }
        leading = false;
        r.digits.push_back(digit);
    }
    if (r.digits.empty()) r.digits = "0";
    return r;
}

// Round-to-nearest (ties to even) at `sig` significant digits.
void round_digits(DecimalDigits& dd, std::size_t sig) {
    if (dd.digits.size() <= sig) return;
    bool sticky = !dd.exact;
    for (std::size_t i = sig + 1; i < dd.digits.size(); ++i)
        sticky |= dd.digits[i] != '0';
    char next = dd.digits[sig];
    dd.digits.resize(sig);
    bool up = next > '5' || (next == '5' && (sticky || ((dd.digits.back() - '0') & 1)));
    dd.exact = false;
    if (up) {
        std::size_t i = dd.digits.size();
        while (i-- > 0) {
            if (dd.digits[i] != '9') {
                ++dd.digits[i];
                return;
            }
            dd.digits[i] = '0';
        }
        dd.digits.insert(dd.digits.begin(), '1');
        dd.digits.pop_back();
        ++dd.dec_exp;
    }
}

std::string format_digits(const DecimalDigits& dd, bool negative) {
    std::string body;
    std::string digits = dd.digits;
    while (digits.size() > 1 && digits.back() == '0' &&
           (std::int64_t)digits.size() - 1 > dd.dec_exp)
        digits.pop_back();  // drop non-significant fractional zeros
    if (dd.dec_exp >= -4 && dd.dec_exp <= 14) {
        if (dd.dec_exp >= 0) {
            std::string int_str = digits.substr(0, std::min<std::size_t>(digits.size(), (std::size_t)dd.dec_exp + 1));
            int_str.append((std::size_t)dd.dec_exp + 1 - int_str.size(), '0');
            body = int_str;
            if (digits.size() > (std::size_t)dd.dec_exp + 1)
                body += "." + digits.substr((std::size_t)dd.dec_exp + 1);
        } else {
            body = "0." + std::string((std::size_t)(-dd.dec_exp - 1), '0') + digits;
        }
    } else {
        body = digits.substr(0, 1);
        if (digits.size() > 1) body += "." + digits.substr(1);
        body += "e" + std::string(dd.dec_exp < 0 ? "-" : "+") +
                std::to_string(dd.dec_exp < 0 ? -dd.dec_exp : dd.dec_exp);
    }
    return negative ? "-" + body : body;
}

}  // namespace

std::string to_decimal_string(const Dyadic& d) {
    if (d.is_zero()) return "= 0";
    constexpr std::size_t kSig = 12;
    DecimalDigits dd = decimal_digits(d, 24);
    if (dd.exact && dd.digits.size() <= 24 && dd.dec_exp >= -4 && dd.dec_exp <= 14)
        return "= " + format_digits(dd, d.sign() < 0);
    if (dd.digits.size() > kSig || !dd.exact) {
        dd = decimal_digits(d, kSig + 1);
        round_digits(dd, kSig);
        return std::string("≈ ") + format_digits(dd, d.sign() < 0);
    }
    return std::string("≈ ") + format_digits(dd, d.sign() < 0);
}

}  // namespace dylab
