// include/dylab/witness.hpp - the bundled witness functions.
//
// All of them are exact maps from dyadics to dyadics.  Three are piecewise
// linear with power-of-two piece widths (teeth, decay, gate); their window
// builders hand breakpoints to the modulus checkers.  The exp demo is an
// integer summation, not a PWL object.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dylab/cost.hpp"
#include "dylab/dyadic.hpp"
#include "dylab/modulus.hpp"
#include "dylab/oracle.hpp"
#include "dylab/piecewise.hpp"

namespace dylab {

// (4^a - 1)/3 * 4^-a, the fractional part 0.0101..01 with a pairs.
// epsilon(0) = 0; all epsilon(a) < 1/3.
Dyadic epsilon(std::uint64_t a);

// Largest 2^(2^m) <= i, or 0 when i < 2.
std::uint64_t tower_floor(std::uint64_t i);

using GrowthFn = std::function<std::uint64_t(std::uint64_t)>;

// Tooth block on [r, r+1]: from (r, 0) the graph climbs through
// (r + epsilon(j), 2^j) for j = 1..A with A = growth(r), mirrors around the
// apex, returns to 0 at r + 2*epsilon(A) and stays 0 up to r+1.  The j-th
// ascent piece has slope 2^3 (j = 1) or 2^(3j-1) (j >= 2), so the steepness
// inside block r grows like 2^(3r) under the default growth(r) = r.
Dyadic sawtooth_eval(const Dyadic& d);
Dyadic sawtooth_eval(const Dyadic& d, const GrowthFn& growth);

// With d_i = 1 - 2^-i: constant 1 on [0, d_3]; on [d_{i-1}, d_i] linear,
// dropping to the plateau value 2^-m (where 2^(2^m) = tower_floor(i)) when
// i is a tower value 2^(2^m) and flat otherwise; 0 at and beyond 1.  The
// steep piece ending at d_i (i a tower) has slope 2^(i-m), so slopes blow
// up doubly-exponentially in the accuracy while every single drop is small.
Dyadic slow_decay_eval(const Dyadic& d);

// 0 at every natural j, peak 1/2 + 2^-2^bitlen(j) at j + 1/2, linear
// between.  The peak's deviation from 1/2 is invisible until the requested
// accuracy passes 2^bitlen(j) bits.
Dyadic precision_gated_eval(const Dyadic& d);

// sawtooth + slow-decay.  Their supports are disjoint: decay lives on
// [0, 1], teeth on [1, inf) (block 0 is identically 0).
Dyadic combined_eval(const Dyadic& d);

// Breakpoint windows for the PWL witnesses.  Windows that touch the decay
// accumulation point 1 cannot list every breakpoint; they return a sound
// sample (all indices up to 64 plus the tower pairs at 256 and 65536) and
// clear `complete`.
BreakpointWindow sawtooth_window(const Dyadic& lo, const Dyadic& hi);
BreakpointWindow slow_decay_window(const Dyadic& lo, const Dyadic& hi);
BreakpointWindow precision_gated_window(const Dyadic& lo, const Dyadic& hi);
BreakpointWindow combined_window(const Dyadic& lo, const Dyadic& hi);

// Adaptive evaluator for the gated peaks from an oracle for x >= 0.
// Queries exactly twice: depth 2 (coarse locate, recorded) and depth n+3.
// The peak correction is applied only when n >= 2^bitlen(j) - 10, where j
// is the integer part of the deep probe; below that threshold the output
// deliberately ignores the peak deviation, which is smaller than 2^-n.
// Guarantees |result - f(x)| <= 2^-n with digit work polynomial in n.
struct MachineTrace {
    Dyadic coarse;          // the depth-2 probe
    std::uint32_t k_class = 0;  // least k with coarse + 1 < 2^k (recorded)
    Dyadic deep;            // the depth-(n+3) probe, clamped into [0, inf)
    std::uint64_t j = 0;    // floor(deep)
    std::uint32_t k_star = 0;  // bitlen(j): the gate actually applied
    bool gated = false;
};
Dyadic precision_gated_machine(InstrumentedOracle& phi, std::uint32_t n,
                               MachineTrace* trace = nullptr);

// exp(x) for dyadic x >= 0 by integer fixed-point summation of x^i/i!,
// accurate to 2^-n (output carries n+2 fractional bits).  The integer part
// alone has about x*log2(e) bits, so the output length is exponential in
// len(x) even though every digit is produced in time polynomial in the
// output length.
std::pair<Dyadic, cost::CostReport> exp_digit_demo(const Dyadic& x,
                                                   std::uint32_t n);

struct WitnessInfo {
    std::string id;
    std::string summary;
    std::function<Dyadic(const Dyadic&)> eval;
    // Null when the witness has no breakpoint structure (exp-demo).
    std::function<BreakpointWindow(const Dyadic&, const Dyadic&)> window;
    // Documented modulus, when one is part of the witness's contract.
    std::optional<Modulus> documented_modulus;
    // Whether that modulus is polynomial in (k, n).
    bool poly_modulus = false;
};

const std::vector<WitnessInfo>& witness_registry();
const WitnessInfo* find_witness(std::string_view id);

}  // namespace dylab
