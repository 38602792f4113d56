#include "dylab/witness.hpp"

#include <bit>
#include <cassert>
#include <chrono>

#include "dylab/errors.hpp"

namespace dylab {

namespace {

// epsilon mantissas carry 2a bits; mirror resolution materializes
// epsilon(A), so cap the tooth level rather than the block index.
constexpr std::uint64_t kMaxToothLevels = 1ull << 16;
constexpr std::uint64_t kMaxWindowPoints = 1ull << 21;
// peak mantissas carry 2^k* bits
constexpr std::uint32_t kMaxGateExp = 24;

// Least j with u <= epsilon(j), plus whether u == epsilon(j) exactly.
// Empty when u >= 1/3 (epsilon never reaches that far).  Uses
// 1 - 3u = (4^-j <= s < 4^-(j-1)), so no scan is needed.
struct AscentLoc {
    std::uint64_t j;
    bool exact;
};

std::optional<AscentLoc> ascent_locate(const Dyadic& u) {
    assert(u.sign() > 0 && !u.is_zero());
    Dyadic s = Dyadic(1) - (u + u + u);
    if (s.sign() <= 0 || s.is_zero()) return std::nullopt;
    std::int64_t p = floor_log2(s);  // u > 0 so s < 1, p <= -1
    std::uint64_t j = (std::uint64_t)((1 - p) / 2);
    bool exact = s.mantissa().is_one() && (p % 2 == 0);
    return AscentLoc{j, exact};
}

// Value of the ascent profile at offset t, located at piece loc.j: linear
// from (epsilon(j-1), 2^(j-1)) to (epsilon(j), 2^j), with 0 at the base.
Dyadic ascent_value(const AscentLoc& loc, const Dyadic& t) {
    if (loc.exact) return Dyadic::power_of_two((std::int64_t)loc.j);
    Dyadic lo_y = loc.j == 1 ? Dyadic(0)
                             : Dyadic::power_of_two((std::int64_t)loc.j - 1);
    Breakpoint p0{epsilon(loc.j - 1), lo_y};
    Breakpoint p1{epsilon(loc.j), Dyadic::power_of_two((std::int64_t)loc.j)};
    return interpolate(p0, p1, t);
}

bool is_tower(std::uint64_t i) { return i >= 2 && tower_floor(i) == i; }

// d_i = 1 - 2^-i
Dyadic decay_breakpoint(std::uint64_t i) {
    if (i == 0) return Dyadic(0);
    if (i > (1ull << 20)) throw ResourceLimit("decay breakpoint index too large");
    return Dyadic(1) - Dyadic::power_of_two(-(std::int64_t)i);
}

// Plateau value at and right of d_i: 1 below the first drop, else 2^-m
// with 2^(2^m) = tower_floor(i).
Dyadic decay_value(std::uint64_t i) {
    std::uint64_t t = tower_floor(i);
    if (t < 2) return Dyadic(1);
    std::uint32_t m = 0;
    while ((1ull << (1u << m)) != t) ++m;
    return Dyadic::power_of_two(-(std::int64_t)m);
}

// 1/2 + 2^-2^ks
Dyadic gate_peak_exp(std::uint32_t ks) {
    assert(ks < 63);
    return Dyadic::power_of_two(-1) +
           Dyadic::power_of_two(-(std::int64_t)(1ull << ks));
}

Dyadic gate_peak(std::uint64_t j) {
    std::uint32_t ks = (std::uint32_t)std::bit_width(j);
    if (ks > kMaxGateExp) {
        throw ResourceLimit("gate peak needs a mantissa beyond the resource cap");
    }
    return gate_peak_exp(ks);
}

}  // namespace

Dyadic epsilon(std::uint64_t a) {
    if (a == 0) return Dyadic();
    if (a > kMaxToothLevels) throw ResourceLimit("epsilon index too large");
    // (4^a - 1)/3: the bit pattern (01)^a, built arithmetically.
    BigNat m = BigNat::sub(BigNat(1).shifted_left(2 * a), BigNat(1));
    std::uint64_t rem = m.divmod_small(3);
    assert(rem == 0);
    (void)rem;
    return Dyadic::make(+1, std::move(m), -2 * (std::int64_t)a);
}

std::uint64_t tower_floor(std::uint64_t i) {
    if (i < 2) return 0;
    std::uint64_t best = 2;
    for (std::uint32_t m = 1; (1u << m) < 64; ++m) {
        std::uint64_t v = 1ull << (1u << m);
        if (v <= i) best = v;
        else break;
    }
    return best;
}

Dyadic sawtooth_eval(const Dyadic& d) {
    return sawtooth_eval(d, [](std::uint64_t r) { return r; });
}

Dyadic sawtooth_eval(const Dyadic& d, const GrowthFn& growth) {
    if (d.sign() < 0) throw DomainError("tooth witness is defined on [0, inf)");
    Dyadic R = d.floor();
    if (!R.fits_u64()) throw ResourceLimit("block index exceeds 2^64");
    std::uint64_t r = R.to_u64();
    Dyadic u = d - R;
    if (u.is_zero()) return Dyadic(0);
    std::uint64_t A = growth(r);
    if (A == 0) return Dyadic(0);

    auto loc = ascent_locate(u);
    if (loc && loc->j <= A) return ascent_value(*loc, u);

    // u > epsilon(A): mirror side or the flat tail.
    Dyadic three_u = u + u + u;
    if (three_u >= Dyadic(2)) return Dyadic(0);  // u >= 2/3 > 2 epsilon(A)
    if (A > kMaxToothLevels) {
        throw ResourceLimit("tooth level too deep to resolve the mirror side");
    }
    Dyadic eA = epsilon(A);
    Dyadic e0 = eA + eA;
    if (u >= e0) return Dyadic(0);
    Dyadic t = e0 - u;  // mirror symmetry: f(r + e0 - t) = f(r + t)
    auto mloc = ascent_locate(t);
    assert(mloc && mloc->j <= A);
    return ascent_value(*mloc, t);
}

Dyadic slow_decay_eval(const Dyadic& d) {
    if (d.sign() < 0) throw DomainError("decay witness is defined on [0, inf)");
    if (d >= Dyadic(1)) return Dyadic(0);
    Dyadic g = Dyadic(1) - d;  // in (0, 1]
    if (g >= Dyadic::power_of_two(-3)) return Dyadic(1);  // d <= d_3
    std::int64_t p = floor_log2(g);  // p <= -4
    if (g.mantissa().is_one()) return decay_value((std::uint64_t)(-p));
    std::uint64_t i = (std::uint64_t)(-p) - 1;  // d in (d_i, d_{i+1})
    if (is_tower(i + 1)) {
        Breakpoint p0{decay_breakpoint(i), decay_value(i)};
        Breakpoint p1{decay_breakpoint(i + 1), decay_value(i + 1)};
        return interpolate(p0, p1, d);
    }
    return decay_value(i);
}

Dyadic precision_gated_eval(const Dyadic& d) {
    if (d.sign() < 0) throw DomainError("gated witness is defined on [0, inf)");
    if (d.is_integer()) return Dyadic(0);
    Dyadic J = d.floor();
    if (!J.fits_u64()) throw ResourceLimit("integer part exceeds 2^64");
    Dyadic h = d - J;
    Dyadic v = gate_peak(J.to_u64());
    int c = Dyadic::compare(h, Dyadic::power_of_two(-1));
    if (c == 0) return v;
    Dyadic base = c < 0 ? h : Dyadic(1) - h;
    return (base + base) * v;
}

Dyadic combined_eval(const Dyadic& d) {
    return sawtooth_eval(d) + slow_decay_eval(d);
}

namespace {

// Shared increasing-x collector clipped to [lo, hi].
struct WindowBuilder {
    const Dyadic& lo;
    const Dyadic& hi;
    std::vector<Breakpoint> pts;

    void push(Dyadic x, Dyadic y) {
        if (x < lo || x > hi) return;
        if (!pts.empty() && !(x > pts.back().x)) return;
        if (pts.size() >= kMaxWindowPoints) {
            throw ResourceLimit("breakpoint window too large");
        }
        pts.push_back({std::move(x), std::move(y)});
    }
};

void check_window_args(const Dyadic& lo, const Dyadic& hi) {
    if (lo.sign() < 0) throw DomainError("window must sit in [0, inf)");
    if (lo > hi) throw DomainError("empty window");
}

}  // namespace

BreakpointWindow sawtooth_window(const Dyadic& lo, const Dyadic& hi) {
    check_window_args(lo, hi);
    Dyadic rhi = hi.floor();
    if (!rhi.fits_u64()) throw ResourceLimit("window end too large");
    std::uint64_t r0 = lo.floor().to_u64();
    std::uint64_t r1 = rhi.to_u64();
    if ((r1 + 2) * (r1 + 2) > kMaxWindowPoints) {
        throw ResourceLimit("tooth window spans too many breakpoints");
    }
    WindowBuilder b{lo, hi, {}};
    b.push(lo, sawtooth_eval(lo));
    for (std::uint64_t r = r0; r <= r1; ++r) {
        Dyadic R((std::int64_t)r);
        b.push(R, Dyadic(0));
        std::uint64_t A = r;  // default growth
        if (A == 0) continue;
        std::vector<Dyadic> eps(A + 1);
        for (std::uint64_t j = 1; j <= A; ++j) {
            eps[j] = eps[j - 1] + Dyadic::power_of_two(-2 * (std::int64_t)j);
            b.push(R + eps[j], Dyadic::power_of_two((std::int64_t)j));
        }
        Dyadic e0 = eps[A] + eps[A];
        for (std::uint64_t j = A - 1; j >= 1; --j) {
            b.push(R + (e0 - eps[j]), Dyadic::power_of_two((std::int64_t)j));
        }
        b.push(R + e0, Dyadic(0));
    }
    b.push(hi, sawtooth_eval(hi));
    return {std::move(b.pts), true};
}

BreakpointWindow slow_decay_window(const Dyadic& lo, const Dyadic& hi) {
    check_window_args(lo, hi);
    Dyadic one(1);
    WindowBuilder b{lo, hi, {}};
    if (lo >= one) {
        b.push(lo, Dyadic(0));
        b.push(hi, Dyadic(0));
        return {std::move(b.pts), true};
    }
    b.push(lo, slow_decay_eval(lo));
    if (hi < one) {
        Dyadic glo = Dyadic(1) - lo;  // d_i > lo  <=>  2^-i < glo
        std::int64_t p = floor_log2(glo);
        std::uint64_t first =
            (std::uint64_t)(-p) + (glo.mantissa().is_one() ? 1 : 0);
        if (first == 0) first = 1;
        Dyadic ghi = Dyadic(1) - hi;  // d_i < hi  <=>  i <= -floor_log2(ghi) - 1
        std::int64_t last = -floor_log2(ghi) - 1;
        if (last >= (std::int64_t)first &&
            (std::uint64_t)last - first >= kMaxWindowPoints) {
            throw ResourceLimit("decay window spans too many breakpoints");
        }
        for (std::int64_t i = (std::int64_t)first; i <= last; ++i) {
            b.push(decay_breakpoint((std::uint64_t)i), decay_value((std::uint64_t)i));
        }
        b.push(hi, slow_decay_eval(hi));
        return {std::move(b.pts), true};
    }
    // Window touches the accumulation point 1: list a sound sample.  Every
    // index up to 64 covers plateau drops through 2^-2; the tower pairs at
    // 256 and 65536 expose the next two steep pieces.
    for (std::uint64_t i = 1; i <= 64; ++i) {
        b.push(decay_breakpoint(i), decay_value(i));
    }
    for (std::uint64_t t : {255ull, 256ull, 65535ull, 65536ull}) {
        b.push(decay_breakpoint(t), decay_value(t));
    }
    b.push(one, Dyadic(0));
    b.push(hi, Dyadic(0));
    return {std::move(b.pts), false};
}

BreakpointWindow precision_gated_window(const Dyadic& lo, const Dyadic& hi) {
    check_window_args(lo, hi);
    Dyadic two_hi = hi + hi;
    if (!two_hi.floor().fits_u64()) throw ResourceLimit("window end too large");
    std::uint64_t m1 = two_hi.floor().to_u64();
    if (m1 > (1ull << 62)) throw ResourceLimit("window end too large");
    Dyadic two_lo = lo + lo;
    Dyadic c = two_lo.floor();
    std::uint64_t m0 = c.to_u64() + ((c == two_lo) ? 0 : 1);
    if (m1 >= m0 && m1 - m0 >= kMaxWindowPoints) {
        throw ResourceLimit("gate window spans too many breakpoints");
    }
    WindowBuilder b{lo, hi, {}};
    b.push(lo, precision_gated_eval(lo));
    for (std::uint64_t m = m0; m <= m1 && m1 >= m0; ++m) {
        Dyadic x = Dyadic((std::int64_t)m) * Dyadic::power_of_two(-1);
        b.push(x, (m % 2 == 0) ? Dyadic(0) : gate_peak(m / 2));
    }
    b.push(hi, precision_gated_eval(hi));
    return {std::move(b.pts), true};
}

BreakpointWindow combined_window(const Dyadic& lo, const Dyadic& hi) {
    check_window_args(lo, hi);
    Dyadic one(1);
    // Supports are disjoint: decay on [0, 1], teeth on [1, inf).
    if (hi <= one) return slow_decay_window(lo, hi);
    if (lo >= one) return sawtooth_window(lo, hi);
    BreakpointWindow left = slow_decay_window(lo, one);
    BreakpointWindow right = sawtooth_window(one, hi);
    for (Breakpoint& p : right.points) {
        if (p.x > left.points.back().x) left.points.push_back(std::move(p));
    }
    left.complete = left.complete && right.complete;
    return left;
}

Dyadic precision_gated_machine(InstrumentedOracle& phi, std::uint32_t n,
                               MachineTrace* trace) {
    Dyadic coarse = phi.query(2);
    std::uint32_t kc = 0;
    Dyadic c1 = coarse + Dyadic(1);
    while (!(c1 < Dyadic::power_of_two((std::int64_t)kc))) {
        if (++kc > 200) throw ResourceLimit("coarse class runaway");
    }
    Dyadic deep = phi.query(n + 3);
    if (deep.sign() < 0) deep = Dyadic(0);
    Dyadic J = deep.floor();
    if (!J.fits_u64()) throw ResourceLimit("integer part exceeds 2^64");
    std::uint64_t j = J.to_u64();
    std::uint32_t ks = (std::uint32_t)std::bit_width(j);
    Dyadic h = deep - J;
    // Ties go to the lower branch; both give the peak value when gated.
    bool lower = Dyadic::compare(h, Dyadic::power_of_two(-1)) <= 0;
    Dyadic base = lower ? h : Dyadic(1) - h;
    bool gated = ks < 63 && (std::uint64_t)n + 10 >= (1ull << ks);
    Dyadic out = gated ? (base + base) * gate_peak_exp(ks) : base;
    if (trace) {
        trace->coarse = coarse;
        trace->k_class = kc;
        trace->deep = deep;
        trace->j = j;
        trace->k_star = ks;
        trace->gated = gated;
    }
    return out;
}

std::pair<Dyadic, cost::CostReport> exp_digit_demo(const Dyadic& x,
                                                   std::uint32_t n) {
    if (x.sign() < 0) throw DomainError("exp demo needs x >= 0");
    if (n > (1u << 26)) throw ResourceLimit("accuracy beyond the resource cap");
    cost::CostReport rep;
    rep.input_len = len(x);
    rep.n = n;
    auto t0 = std::chrono::steady_clock::now();
    Dyadic out;
    {
        cost::Scope meter;
        Dyadic f = x.floor();
        Dyadic c = (f == x) ? f : f + Dyadic(1);
        if (!c.fits_u64() || c.to_u64() > (1u << 20)) {
            throw ResourceLimit("exp argument too large");
        }
        std::uint64_t xc = c.to_u64();
        std::uint64_t kbound = 8 * xc + 4ull * n + 64;
        std::uint32_t lg = 0;
        while ((1ull << lg) < kbound + 1) ++lg;
        // Guard bits: every floored division loses at most one unit, later
        // factors amplify by at most e^x, and the settled tail is geometric
        // with ratio x/(i+1); 2 ceil(x) + 2 lg + 4 covers all of it with
        // room to spare.
        std::uint64_t G = (std::uint64_t)n + 2 * xc + 2 * lg + 4;
        BigNat term = BigNat(1).shifted_left(G);
        BigNat sum;
        std::uint64_t i = 0;
        while (true) {
            sum = sum + term;
            ++i;
            if (i > kbound) throw ResourceLimit("exp series failed to settle");
            term = BigNat::mul(term, x.mantissa());
            if (x.exponent() < 0) {
                term = term.shifted_right((std::size_t)(-x.exponent()));
            } else if (x.exponent() > 0) {
                term = term.shifted_left((std::size_t)x.exponent());
            }
            term.divmod_small((std::uint32_t)i);
            if (term.is_zero() && i >= xc) break;
        }
        out = Dyadic::make(+1, std::move(sum), -(std::int64_t)G)
                  .round_to_precision(n + 2);
        rep.digit_ops = meter.digit_ops();
    }
    rep.output_len = len(out);
    rep.digit_ops += len(out) / 2;  // one op per emitted output symbol
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return {out, rep};
}

const std::vector<WitnessInfo>& witness_registry() {
    static const std::vector<WitnessInfo> reg = [] {
        std::vector<WitnessInfo> v;
        v.push_back(
            {"sawtooth",
             "tooth block on [r, r+1] climbs to 2^r through pieces as steep "
             "as 2^(3r-1); modulus is exponential in k",
             [](const Dyadic& d) { return sawtooth_eval(d); },
             [](const Dyadic& a, const Dyadic& b) { return sawtooth_window(a, b); },
             Modulus::affine_exp(3), false});
        v.push_back(
            {"slow-decay",
             "staircase falling to 0 at 1; plateau drops thin out along "
             "power towers, so no modulus is polynomial in n",
             [](const Dyadic& d) { return slow_decay_eval(d); },
             [](const Dyadic& a, const Dyadic& b) {
                 return slow_decay_window(a, b);
             },
             Modulus::from_fn(
                 "2^(2^(n+1))",
                 [](std::uint32_t, std::uint32_t n) -> std::uint64_t {
                     if (n + 1 > 5) {
                         throw ResourceLimit("modulus value exceeds 2^63");
                     }
                     return 1ull << (1ull << (n + 1));
                 },
                 true),
             false});
        v.push_back(
            {"precision-gated",
             "zero at naturals, peak 1/2 + 2^-2^bitlen(j) at j + 1/2; the "
             "peak is invisible below accuracy 2^bitlen(j)",
             [](const Dyadic& d) { return precision_gated_eval(d); },
             [](const Dyadic& a, const Dyadic& b) {
                 return precision_gated_window(a, b);
             },
             Modulus::linear(2), true});
        v.push_back(
            {"combined",
             "slow-decay on [0, 1] plus sawtooth on [1, inf): bad modulus "
             "in both k and n at once",
             [](const Dyadic& d) { return combined_eval(d); },
             [](const Dyadic& a, const Dyadic& b) { return combined_window(a, b); },
             Modulus::from_fn(
                 "max(3*2^k + n + 1, 2^(2^(n+2)))",
                 [](std::uint32_t k, std::uint32_t n) -> std::uint64_t {
                     if (n + 2 > 5 || k > 40) {
                         throw ResourceLimit("modulus value exceeds 2^63");
                     }
                     std::uint64_t saw = 3 * (1ull << k) + n + 1;
                     std::uint64_t dec = 1ull << (1ull << (n + 2));
                     return saw > dec ? saw : dec;
                 },
                 true),
             false});
        v.push_back({"exp-demo",
                     "exp(x) summed in integer fixed point; output length is "
                     "exponential in len(x), digits stream in poly time",
                     [](const Dyadic& d) { return exp_digit_demo(d, 16).first; },
                     nullptr, std::nullopt, false});
        return v;
    }();
    return reg;
}

const WitnessInfo* find_witness(std::string_view id) {
    for (const WitnessInfo& w : witness_registry()) {
        if (w.id == id) return &w;
    }
    return nullptr;
}

}  // namespace dylab
