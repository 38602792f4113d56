// include/dylab/oracle.hpp - Cauchy-sequence oracles for real points.
//
// An oracle for x answers query(n) with a dyadic d such that
// |x - d| <= 2^-n.  The canonical oracle answers floor(2^n x)/2^n.  An
// exactly known point is always a Dyadic here; points defined through a
// witness function are obtained by evaluating the witness exactly first and
// wrapping the resulting dyadic.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "dylab/dyadic.hpp"

namespace dylab {

class CauchyOracle {
  public:
    using Fn = std::function<Dyadic(std::uint32_t)>;

    CauchyOracle() = default;
    explicit CauchyOracle(Fn f) : fn_(std::move(f)) {}

    Dyadic query(std::uint32_t n) const { return fn_(n); }
    bool valid() const { return static_cast<bool>(fn_); }

  private:
    Fn fn_;
};

// phi*_x(n) = floor(2^n x)/2^n.  Exact, monotone from below.
CauchyOracle canonical_oracle(const Dyadic& x);

// phi*_x(n+1) + j * 2^-(n+1) with j in {-1,0,+1} drawn deterministically
// from (seed, n).  Still a valid oracle: the two error terms sum to 2^-n.
CauchyOracle jittered_oracle(const Dyadic& x, std::uint64_t seed);

// Counts queries and records the deepest precision requested.
class InstrumentedOracle {
  public:
    explicit InstrumentedOracle(CauchyOracle inner) : inner_(std::move(inner)) {}

    Dyadic query(std::uint32_t n) {
        ++count_;
        if (n > max_depth_) max_depth_ = n;
        return inner_.query(n);
    }

    std::uint32_t max_depth() const { return max_depth_; }
    std::uint64_t count() const { return count_; }

  private:
    CauchyOracle inner_;
    std::uint32_t max_depth_ = 0;
    std::uint64_t count_ = 0;
};

}  // namespace dylab
