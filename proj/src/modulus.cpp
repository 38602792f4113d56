#include "dylab/modulus.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <sstream>
#include <vector>

#include "dylab/errors.hpp"

namespace dylab {

namespace {

// m values double as grid exponents and oracle depths; beyond this the
// mantissas alone would exhaust memory.
constexpr std::uint64_t kMaxModulusValue = 1ull << 26;
constexpr std::uint64_t kMaxEnumPoints = 1ull << 18;

std::uint64_t guarded(unsigned __int128 v) {
    if (v > (unsigned __int128)(1ull << 62)) {
        throw ResourceLimit("modulus value exceeds 2^62");
    }
    return (std::uint64_t)v;
}

}  // namespace

Modulus Modulus::poly(std::uint32_t b) {
    return Modulus(
        "(k+n)^" + std::to_string(b),
        [b](std::uint32_t k, std::uint32_t n) {
            unsigned __int128 acc = 1;
            for (std::uint32_t i = 0; i < b; ++i) {
                acc = guarded(acc * ((std::uint64_t)k + n));
            }
            return (std::uint64_t)acc;
        },
        true);
}

Modulus Modulus::affine_exp(std::uint64_t c) {
    return Modulus(
        std::to_string(c) + "*2^k + n",
        [c](std::uint32_t k, std::uint32_t n) {
            if (k > 62) throw ResourceLimit("modulus value exceeds 2^62");
            return guarded((unsigned __int128)c * (1ull << k) + n);
        },
        true);
}

Modulus Modulus::linear(std::uint64_t add) {
    return Modulus(
        add == 0 ? std::string("n") : "n + " + std::to_string(add),
        [add](std::uint32_t, std::uint32_t n) { return guarded((unsigned __int128)n + add); },
        true);
}

Modulus Modulus::from_fn(std::string description, Fn raw, bool monotone) {
    return Modulus(std::move(description), std::move(raw), monotone);
}

std::uint64_t Modulus::operator()(std::uint32_t k, std::uint32_t n) const {
    if (monotone_) return raw_(k, n);
    // Rectangle running maxima restore monotonicity for arbitrary tables.
    std::uint64_t kk = (std::uint64_t)k + 1, nn = (std::uint64_t)n + 1;
    if (kk * nn > (1ull << 22)) {
        throw ResourceLimit("modulus table too large to normalize");
    }
    std::vector<std::uint64_t> col(nn, 0);
    for (std::uint32_t i = 0; i < kk; ++i) {
        std::uint64_t row_best = 0;
        for (std::uint32_t j = 0; j < nn; ++j) {
            row_best = std::max(row_best, raw_(i, j));
            col[j] = std::max(col[j], row_best);
        }
    }
    return col[nn - 1];
}

CheckTarget make_target(const PiecewiseLinear& f) {
    auto fp = std::make_shared<PiecewiseLinear>(f);
    CheckTarget t;
    t.eval = [fp](const Dyadic& x) { return fp->eval(x); };
    t.window = [fp](const Dyadic& lo, const Dyadic& hi) {
        PiecewiseLinear c = fp->clipped(lo, hi);
        return BreakpointWindow{c.points(), true};
    };
    return t;
}

std::string ModulusReport::csv_header() {
    return "verdict,k,n,m,witness_x,witness_y,gap,bound";
}

std::string ModulusReport::to_csv_row() const {
    std::ostringstream os;
    os << (verdict == ModulusVerdict::refuted ? "refuted" : "verified_on_grid")
       << ',' << k << ',' << n << ',' << m_value << ',';
    if (witness) {
        os << witness->x.to_string() << ',' << witness->y.to_string() << ','
           << witness->gap.to_string() << ',';
    } else {
        os << ",,,";
    }
    os << bound.to_string();
    return os.str();
}

namespace {

struct SweepState {
    std::optional<VariationExtremum> best;
    std::uint64_t pairs = 0;
};

// Max |f(y) - f(x)| over pairs of xs with 0 < y - x <= reach, folded into
// st.  Evaluates f once per distinct candidate.
void sweep_chunk(const std::function<Dyadic(const Dyadic&)>& eval,
                 std::vector<Dyadic>& xs, const Dyadic& reach, SweepState& st) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Dyadic> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = eval(xs[i]);
    std::size_t base = 0;
    for (std::size_t j = 1; j < xs.size(); ++j) {
        while (xs[j] - xs[base] > reach) ++base;
        for (std::size_t i = base; i < j; ++i) {
            Dyadic gap = (fx[j] - fx[i]).abs();
            ++st.pairs;
            if (!st.best || gap > st.best->gap) {
                st.best = VariationExtremum{std::move(gap), xs[i], xs[j]};
            }
        }
    }
}

ModulusReport run_check(const CheckTarget& f, const Dyadic& lo, const Dyadic& hi,
                        const Modulus& m, std::uint32_t k, std::uint32_t n,
                        std::optional<std::uint64_t> grid_exp_opt) {
    assert(f.eval);
    ModulusReport rep;
    rep.k = k;
    rep.n = n;
    rep.m_value = m(k, n);
    rep.bound = Dyadic::power_of_two(-(std::int64_t)n);
    if (rep.m_value > kMaxModulusValue) {
        throw ResourceLimit("modulus value too large to grid-check");
    }
    rep.grid_exp = grid_exp_opt.value_or(rep.m_value + 2);
    if (rep.grid_exp > kMaxModulusValue + 8) {
        throw ResourceLimit("grid resolution beyond the resource cap");
    }
    Dyadic h = Dyadic::power_of_two(-(std::int64_t)rep.m_value);
    Dyadic g = Dyadic::power_of_two(-(std::int64_t)rep.grid_exp);
    // Largest whole-grid stretch within h; h exactly when the grid refines h.
    Dyadic w = rep.grid_exp >= rep.m_value ? h : Dyadic(0);

    SweepState st;
    if (f.window) {
        BreakpointWindow win = f.window(lo, hi);
        rep.exhaustive = win.complete;
        // Top grid point, so snapped candidates never leave the window.
        Dyadic top = lo + (hi - lo).round_to_precision((std::uint32_t)rep.grid_exp);
        std::vector<Dyadic> xs;
        auto add_snaps = [&](Dyadic x) {
            if (x < lo) x = lo;
            if (x > hi) x = hi;
            Dyadic sd = lo + (x - lo).round_to_precision((std::uint32_t)rep.grid_exp);
            Dyadic su = (sd == x) ? sd : sd + g;
            xs.push_back(sd);
            if (su <= top && su != sd) xs.push_back(std::move(su));
        };
        auto add_candidates = [&](const Dyadic& p) {
            xs.push_back(p);  // exact breakpoint
            add_snaps(p);
            if (!w.is_zero()) {
                add_snaps(p - w);
                add_snaps(p + w);
            }
        };
        // Candidates of points farther apart than this can never pair
        // within h, so the sweep flushes cluster by cluster.
        Dyadic thresh = w + w + g + g + g + g + h;
        for (std::size_t i = 0; i < win.points.size(); ++i) {
            if (i > 0 && !xs.empty() &&
                win.points[i].x - win.points[i - 1].x > thresh) {
                sweep_chunk(f.eval, xs, h, st);
                xs.clear();
            }
            add_candidates(win.points[i].x);
        }
        if (!xs.empty()) sweep_chunk(f.eval, xs, h, st);
    } else {
        // No breakpoint structure exposed: enumerate the grid outright.
        rep.exhaustive = true;
        std::vector<Dyadic> xs;
        std::uint64_t count = 0;
        for (Dyadic x = lo; x <= hi; x = x + g) {
            if (++count > kMaxEnumPoints) {
                throw ResourceLimit(
                    "grid enumeration beyond the resource cap (the target "
                    "exposes no breakpoints)");
            }
            xs.push_back(x);
        }
        sweep_chunk(f.eval, xs, h, st);
    }
    rep.pairs_checked = st.pairs;
    if (st.best && st.best->gap > rep.bound) {
        rep.verdict = ModulusVerdict::refuted;
        rep.witness = std::move(st.best);
    } else {
        rep.verdict = ModulusVerdict::verified_on_grid;
    }
    return rep;
}

}  // namespace

ModulusReport check_modulus_bounded(const CheckTarget& f, const Dyadic& a,
                                    const Modulus& m, std::uint32_t k,
                                    std::uint32_t n,
                                    std::optional<std::uint64_t> grid_exp) {
    if (k > 40) throw ResourceLimit("window exponent beyond the resource cap");
    return run_check(f, a, a + Dyadic::power_of_two(k), m, k, n, grid_exp);
}

ModulusReport check_modulus_open(const CheckTarget& f, const Dyadic& a,
                                 const std::optional<Dyadic>& b,
                                 const Modulus& m, std::uint32_t k,
                                 std::uint32_t n,
                                 std::optional<std::uint64_t> grid_exp) {
    if (k > 40) throw ResourceLimit("window exponent beyond the resource cap");
    Dyadic shrink = Dyadic::power_of_two(-(std::int64_t)k);
    Dyadic lo = a + shrink;
    Dyadic hi = b ? (*b - shrink) : (a + Dyadic::power_of_two(k));
    if (!(lo < hi)) {
        throw EmptyStrip("the open strip is empty at this k");
    }
    return run_check(f, lo, hi, m, k, n, grid_exp);
}

VariationExtremum pwl_max_variation(const PiecewiseLinear& f,
                                    const Dyadic& delta) {
    assert(delta.sign() > 0 && !delta.is_zero());
    std::vector<Dyadic> xs;
    xs.reserve(3 * f.points().size());
    for (const Breakpoint& p : f.points()) {
        xs.push_back(p.x);
        Dyadic l = p.x - delta;
        xs.push_back(l < f.lo() ? f.lo() : std::move(l));
        Dyadic r = p.x + delta;
        xs.push_back(r > f.hi() ? f.hi() : std::move(r));
    }
    SweepState st;
    auto eval = [&f](const Dyadic& x) { return f.eval(x); };
    sweep_chunk(eval, xs, delta, st);
    if (!st.best) return {Dyadic(0), f.lo(), f.lo()};
    return *st.best;
}

std::uint64_t min_modulus_pwl(const PiecewiseLinear& f, std::uint32_t n) {
    Dyadic bound = Dyadic::power_of_two(-(std::int64_t)n);
    Dyadic slope = f.max_abs_slope();
    if (slope.is_zero()) return 0;
    auto ok = [&](std::uint64_t M) {
        return !(pwl_max_variation(f, Dyadic::power_of_two(-(std::int64_t)M)).gap >
                 bound);
    };
    if (ok(0)) return 0;
    // |f(y)-f(x)| <= slope * |y-x|, so the cap certainly satisfies ok().
    std::uint64_t cap =
        (std::uint64_t)std::max<std::int64_t>(0, ceil_log2(slope)) + n + 2;
    assert(ok(cap));
    std::uint64_t lom = 0, him = cap;
    while (him - lom > 1) {
        std::uint64_t mid = lom + (him - lom) / 2;
        (ok(mid) ? him : lom) = mid;
    }
    return him;
}

std::uint64_t required_query_depth(const PiecewiseLinear& f, const Dyadic& x,
                                   std::uint32_t n) {
    Dyadic fx = f.eval(x);
    Dyadic bound = Dyadic::power_of_two(1 - (std::int64_t)n);
    Dyadic slope = f.max_abs_slope();
    if (slope.is_zero()) return 0;
    // Largest deviation from f(x) within 2^-q; extremes sit at breakpoints
    // or at the clipped interval ends.
    auto ok = [&](std::uint64_t q) {
        Dyadic delta = Dyadic::power_of_two(-(std::int64_t)q);
        Dyadic wl = x - delta;
        if (wl < f.lo()) wl = f.lo();
        Dyadic wr = x + delta;
        if (wr > f.hi()) wr = f.hi();
        Dyadic worst;
        auto consider = [&](const Dyadic& v) {
            Dyadic gap = (v - fx).abs();
            if (gap > worst) worst = std::move(gap);
        };
        consider(f.eval(wl));
        consider(f.eval(wr));
        for (const Breakpoint& p : f.points()) {
            if (p.x >= wl && p.x <= wr) consider(p.y);
        }
        return !(worst > bound);
    };
    if (ok(0)) return 0;
    std::uint64_t cap =
        (std::uint64_t)std::max<std::int64_t>(0, ceil_log2(slope)) + n + 2;
    assert(ok(cap));
    std::uint64_t loq = 0, hiq = cap;
    while (hiq - loq > 1) {
        std::uint64_t mid = loq + (hiq - loq) / 2;
        (ok(mid) ? hiq : loq) = mid;
    }
    return hiq;
}

}  // namespace dylab
