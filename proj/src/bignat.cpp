#include "dylab/bignat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "dylab/cost.hpp"

namespace dylab {

void BigNat::strip() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigNat::bit_length() const {
    if (limbs_.empty()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

bool BigNat::bit(std::size_t i) const {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1u;
}

std::size_t BigNat::trailing_zero_bits() const {
    assert(!limbs_.empty());
    std::size_t i = 0;
    while (limbs_[i] == 0) ++i;
    cost::tally(i + 1);
    return 64 * i + std::countr_zero(limbs_[i]);
}

int BigNat::compare(const BigNat& a, const BigNat& b) {
    cost::tally(1);
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        cost::tally(1);
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigNat BigNat::add(const BigNat& a, const BigNat& b) {
    const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
    const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
    BigNat r;
    r.limbs_.reserve(x.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cost::tally(1);
        std::uint64_t yi = i < y.size() ? y[i] : 0;
        std::uint64_t s = x[i] + yi;
        std::uint64_t c1 = s < x[i];
        std::uint64_t s2 = s + carry;
        std::uint64_t c2 = s2 < s;
        r.limbs_.push_back(s2);
        carry = c1 | c2;
    }
    if (carry) {
        cost::tally(1);
        r.limbs_.push_back(1);
    }
    return r;
}

BigNat BigNat::sub(const BigNat& a, const BigNat& b) {
    assert(compare(a, b) >= 0);
    BigNat r;
    r.limbs_.reserve(a.limbs_.size());
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        cost::tally(1);
        std::uint64_t bi = i < b.limbs_.size() ? b.limbs_[i] : 0;
        std::uint64_t d = a.limbs_[i] - bi;
        std::uint64_t b1 = a.limbs_[i] < bi;
        std::uint64_t d2 = d - borrow;
        std::uint64_t b2 = d < borrow;
        r.limbs_.push_back(d2);
        borrow = b1 | b2;
    }
    assert(borrow == 0);
    r.strip();
    return r;
}

BigNat BigNat::mul(const BigNat& a, const BigNat& b) {
    if (a.is_zero() || b.is_zero()) return BigNat{};
    BigNat r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            cost::tally(1);
            unsigned __int128 cur = (unsigned __int128)a.limbs_[i] * b.limbs_[j] +
                                    r.limbs_[i + j] + carry;
            r.limbs_[i + j] = (std::uint64_t)cur;
            carry = (std::uint64_t)(cur >> 64);
        }
        r.limbs_[i + b.limbs_.size()] = carry;
    }
    r.strip();
    return r;
}

BigNat BigNat::shifted_left(std::size_t bits) const {
    if (is_zero() || bits == 0) {
        cost::tally(limbs_.size());
        return *this;
    }
    std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
    BigNat r;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        cost::tally(1);
        r.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift != 0)
            r.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    cost::tally(limb_shift);
    r.strip();
    return r;
}

BigNat BigNat::shifted_right(std::size_t bits) const {
    std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
    if (limb_shift >= limbs_.size()) return BigNat{};
    BigNat r;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
        cost::tally(1);
        r.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift != 0 && i + limb_shift + 1 < limbs_.size())
            r.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    r.strip();
    return r;
}

BigNat BigNat::low_bits(std::size_t bits) const {
    std::size_t limb_count = (bits + 63) / 64;
    if (limb_count >= limbs_.size() && (bits % 64 == 0 || bit_length() <= bits)) {
        cost::tally(limbs_.size());
        return *this;
    }
    BigNat r;
    r.limbs_.assign(limbs_.begin(),
                    limbs_.begin() + std::min(limb_count, limbs_.size()));
    cost::tally(r.limbs_.size());
    if (bits % 64 != 0 && limb_count <= limbs_.size())
        r.limbs_.back() &= (~std::uint64_t{0}) >> (64 - bits % 64);
    r.strip();
    return r;
}

std::uint64_t BigNat::divmod_small(std::uint32_t d) {
    assert(d != 0);
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        cost::tally(1);
        unsigned __int128 cur = ((unsigned __int128)rem << 64) | limbs_[i];
        limbs_[i] = (std::uint64_t)(cur / d);
        rem = (std::uint64_t)(cur % d);
    }
    strip();
    return rem;
}

std::string BigNat::to_binary() const {
    if (is_zero()) return "0";
    std::size_t n = bit_length();
    std::string s;
    s.reserve(n);
    for (std::size_t i = n; i-- > 0;) s.push_back(bit(i) ? '1' : '0');
    return s;
}

std::string BigNat::to_decimal() const {
    if (is_zero()) return "0";
    BigNat tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        std::uint64_t chunk = tmp.divmod_small(1000000000u);
        for (int i = 0; i < 9; ++i) {
            out.push_back(char('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
}

BigNat BigNat::from_binary(const std::string& bits) {
    BigNat r;
    r.limbs_.assign(bits.size() / 64 + 1, 0);
    std::size_t pos = 0;  // bit position from the least-significant end
    for (std::size_t i = bits.size(); i-- > 0; ++pos) {
        assert(bits[i] == '0' || bits[i] == '1');
        if (bits[i] == '1') r.limbs_[pos / 64] |= std::uint64_t{1} << (pos % 64);
    }
    cost::tally(r.limbs_.size());
    r.strip();
    return r;
}

}  // namespace dylab
