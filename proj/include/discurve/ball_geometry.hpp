#pragma once

#include "discurve/analytic_map.hpp"
#include "discurve/core.hpp"

namespace discurve {

/// The spherical shell B(s) \ closed-B(s - eps), the region boundary images
/// are confined to at each stage.
struct Shell {
    double radius = 0.0;  // s
    double width = 0.0;   // eps, 0 < eps < s

    Shell() = default;
    Shell(double s, double eps) : radius(s), width(eps) {
        if (!(s > 0.0) || !(eps > 0.0) || !(eps < s)) throw Error("bad-shell");
    }

    double inner() const { return radius - width; }
    bool contains(const CVec& v) const { return margin(v) > 0.0; }
    // min distance-to-violating either face; positive inside the open shell
    double margin(const CVec& v) const {
        double r = norm2(v);
        return std::min(radius - r, r - inner());
    }
};

/// A nonzero direction in C^n; span{u} and its orthogonal complement are the
/// geometric objects every predicate below slices along.
struct Direction {
    CVec u;
    explicit Direction(CVec v) : u(std::move(v)) {
        if (norm2(u) == 0.0) throw Error("zero-direction");
    }
};

// sqrt(s^2 + delta^2): the coupled radius growth that pairs with the
// intrinsic-distance gain delta.
double pythagorean_radius(double s, double delta);

// Orthogonal projection of v onto span{u}.
CVec project_span(const Direction& u, const CVec& v);

// Distance from the origin to the affine line v + <u>^perp, i.e. |<v, u/|u|>|.
double line_distance_from_origin(const CVec& v, const Direction& u);

// Margin of (v + <u>^perp) missing the closed ball of `ball_radius`;
// positive means the line avoids it.
double line_avoids_ball_margin(const CVec& v, const Direction& u, double ball_radius);
bool line_avoids_ball(const CVec& v, const Direction& u, double ball_radius);

// Distance from v to shell ∩ (w + <u>^perp), computed in the slice.
// Throws "empty-intersection" when the affine line misses the shell.
double orthocap_separation(const CVec& v, const CVec& w, const Direction& u,
                           const Shell& shell);

}  // namespace discurve
