#include "dylab/piecewise.hpp"

#include <algorithm>

#include "dylab/errors.hpp"

namespace dylab {

Dyadic interpolate(const Breakpoint& p0, const Breakpoint& p1, const Dyadic& x) {
    Dyadic dx = p1.x - p0.x;
    if (dx.sign() <= 0) {
        throw Error("interpolation spacing is not positive");
    }
    if (p0.y == p1.y) return p0.y;  // flat: no spacing constraint needed
    if (!dx.mantissa().is_one()) {
        // A non-power-of-two run over a slope has no exact dyadic values.
        throw Error("interpolation spacing is not a power of two");
    }
    if (x == p0.x) return p0.y;
    if (x == p1.x) return p1.y;
    // (x - x0) * (y1 - y0) * 2^{-e} with dx = 2^e.
    return p0.y + (x - p0.x) * (p1.y - p0.y) * Dyadic::power_of_two(-dx.exponent());
}

PiecewiseLinear::PiecewiseLinear(std::vector<Breakpoint> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw Error("piecewise function needs a breakpoint");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (Dyadic::compare(points_[i - 1].x, points_[i].x) >= 0) {
            throw Error("breakpoints must have strictly increasing x");
        }
    }
}

Dyadic PiecewiseLinear::eval(const Dyadic& x) const {
    if (x < lo() || x > hi()) throw DomainError("point outside the window");
    // Last breakpoint with points_[i].x <= x.
    auto it = std::upper_bound(
        points_.begin(), points_.end(), x,
        [](const Dyadic& v, const Breakpoint& p) { return v < p.x; });
    std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    if (points_[i].x == x) return points_[i].y;
    return interpolate(points_[i], points_[i + 1], x);
}

PiecewiseLinear PiecewiseLinear::clipped(const Dyadic& a, const Dyadic& b) const {
    if (a > b) throw DomainError("empty clip window");
    std::vector<Breakpoint> out;
    out.push_back({a, eval(a)});
    for (const Breakpoint& p : points_) {
        if (p.x > a && p.x < b) out.push_back(p);
    }
    if (b > a) out.push_back({b, eval(b)});
    return PiecewiseLinear(std::move(out));
}

Dyadic PiecewiseLinear::max_abs_slope() const {
    Dyadic best;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        Dyadic dy = points_[i].y - points_[i - 1].y;
        if (dy.is_zero()) continue;  // flat pieces contribute nothing
        Dyadic dx = points_[i].x - points_[i - 1].x;
        if (!dx.mantissa().is_one()) {
            throw Error("sloped piece width is not a power of two");
        }
        Dyadic s = dy.abs() * Dyadic::power_of_two(-dx.exponent());
        if (s > best) best = s;
    }
    return best;
}

}  // namespace dylab
