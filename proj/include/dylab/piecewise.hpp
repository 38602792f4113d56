// include/dylab/piecewise.hpp - exact piecewise-linear functions over
// dyadic breakpoints.
//
// Every sloped piece in the lab has a power-of-two width, so linear
// interpolation never leaves the dyadics; interpolate() enforces that.
// Flat pieces may have any width (their value needs no division).
#pragma once

#include <vector>

#include "dylab/dyadic.hpp"

namespace dylab {

struct Breakpoint {
    Dyadic x;
    Dyadic y;
};

// Breakpoints of a function restricted to a window.  `complete` means the
// function is exactly linear between consecutive points; windows touching a
// breakpoint accumulation zone list a sound subset instead and clear it.
struct BreakpointWindow {
    std::vector<Breakpoint> points;  // strictly increasing x
    bool complete = true;
};

// y0 + (x - x0) * (y1 - y0) / (x1 - x0); pre: x0 < x1, x0 <= x <= x1, and
// x1 - x0 a power of two unless y0 == y1.
Dyadic interpolate(const Breakpoint& p0, const Breakpoint& p1, const Dyadic& x);

class PiecewiseLinear {
  public:
    // pre: at least one point, strictly increasing x.
    explicit PiecewiseLinear(std::vector<Breakpoint> points);

    const std::vector<Breakpoint>& points() const { return points_; }
    const Dyadic& lo() const { return points_.front().x; }
    const Dyadic& hi() const { return points_.back().x; }

    // DomainError outside [lo, hi].
    Dyadic eval(const Dyadic& x) const;

    // Restriction to [lo, hi] with interpolated endpoint values inserted.
    PiecewiseLinear clipped(const Dyadic& lo, const Dyadic& hi) const;

    // Largest |slope| over all pieces, zero dyadic if constant.
    Dyadic max_abs_slope() const;

  private:
    std::vector<Breakpoint> points_;
};

}  // namespace dylab
