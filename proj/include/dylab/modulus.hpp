// include/dylab/modulus.hpp - moduli of continuity and their checkers.
//
// A modulus m(k, n) promises |f(x) - f(y)| <= 2^-n whenever x, y lie in the
// window indexed by k and |x - y| <= 2^-m(k,n).  Callers hand the checkers
// an exact evaluator plus (when the function exposes them) its breakpoints;
// verification then runs over an explicit candidate family that dominates
// every grid pair, so a complete breakpoint window yields the exact grid
// verdict without enumerating the grid.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "dylab/dyadic.hpp"
#include "dylab/piecewise.hpp"

namespace dylab {

// Monotone (in both arguments) map (k, n) -> precision exponent.  Closed
// forms are monotone by construction; arbitrary tables are normalized by
// running rectangle maxima so the monotone contract always holds.
class Modulus {
  public:
    using Fn = std::function<std::uint64_t(std::uint32_t, std::uint32_t)>;

    // (k + n)^b
    static Modulus poly(std::uint32_t b);
    // c * 2^k + n
    static Modulus affine_exp(std::uint64_t c);
    // n + add
    static Modulus linear(std::uint64_t add);
    static Modulus from_fn(std::string description, Fn raw, bool monotone);

    std::uint64_t operator()(std::uint32_t k, std::uint32_t n) const;
    const std::string& description() const { return desc_; }

  private:
    Modulus(std::string d, Fn f, bool monotone)
        : desc_(std::move(d)), raw_(std::move(f)), monotone_(monotone) {}

    std::string desc_;
    Fn raw_;
    bool monotone_;
};

// What a checker needs from the function under test.  `window` may be null;
// the checker then falls back to plain grid enumeration (resource-guarded).
struct CheckTarget {
    std::function<Dyadic(const Dyadic&)> eval;
    std::function<BreakpointWindow(const Dyadic&, const Dyadic&)> window;
};

CheckTarget make_target(const PiecewiseLinear& f);

struct VariationExtremum {
    Dyadic gap;  // |f(y) - f(x)|
    Dyadic x;
    Dyadic y;  // x < y
};

enum class ModulusVerdict { verified_on_grid, refuted };

struct ModulusReport {
    ModulusVerdict verdict = ModulusVerdict::verified_on_grid;
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::uint64_t m_value = 0;
    std::uint64_t grid_exp = 0;
    Dyadic bound;  // 2^-n
    std::optional<VariationExtremum> witness;  // present iff refuted
    std::uint64_t pairs_checked = 0;
    // true when the breakpoint window was complete, so the sweep decides
    // exactly the documented grid-pair family; false for sampled windows.
    bool exhaustive = true;

    static std::string csv_header();  // verdict,k,n,m,witness_x,witness_y,gap,bound
    std::string to_csv_row() const;
};

// Checks m as a modulus for f on [a, a + 2^k] against accuracy 2^-n.  The
// pair family: all grid pairs (spacing 2^-grid_exp) within 2^-m, plus all
// breakpoint pairs within 2^-m, plus mixed grid/breakpoint pairs.  Refuted
// iff a violating pair was found; any reported witness pair is exact.
ModulusReport check_modulus_bounded(const CheckTarget& f, const Dyadic& a,
                                    const Modulus& m, std::uint32_t k,
                                    std::uint32_t n,
                                    std::optional<std::uint64_t> grid_exp = {});

// Same on the open-interval strip [a + 2^-k, b - 2^-k]; EmptyStrip when
// that is empty.  An absent b means +infinity; the examined strip is then
// capped at a + 2^k.
ModulusReport check_modulus_open(const CheckTarget& f, const Dyadic& a,
                                 const std::optional<Dyadic>& b,
                                 const Modulus& m, std::uint32_t k,
                                 std::uint32_t n,
                                 std::optional<std::uint64_t> grid_exp = {});

// Exact sup of |f(y) - f(x)| over real pairs in f's window with
// 0 <= y - x <= delta, with an attaining pair.  pre: delta > 0.
VariationExtremum pwl_max_variation(const PiecewiseLinear& f, const Dyadic& delta);

// Least M with max variation at scale 2^-M at most 2^-n, i.e. the best
// (k-free) modulus exponent for f on its own window.
std::uint64_t min_modulus_pwl(const PiecewiseLinear& f, std::uint32_t n);

// Least q such that every point within 2^-q of x has value within 2^(1-n)
// of f(x): a lower bound (up to O(1)) on the oracle depth any 2^-n-accurate
// evaluator must reach at x.
std::uint64_t required_query_depth(const PiecewiseLinear& f, const Dyadic& x,
                                   std::uint32_t n);

}  // namespace dylab
