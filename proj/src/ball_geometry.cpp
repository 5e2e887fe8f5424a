#include "discurve/ball_geometry.hpp"

#include <cmath>

namespace discurve {

double pythagorean_radius(double s, double delta) {
    if (!(s > 0.0) || delta < 0.0) throw Error("bad-radius-parameters");
    return std::hypot(s, delta);
}

CVec project_span(const Direction& u, const CVec& v) {
    cplx t = inner(v, u.u) / inner(u.u, u.u);
    return t * u.u;
}

double line_distance_from_origin(const CVec& v, const Direction& u) {
    return std::abs(inner(v, u.u)) / norm2(u.u);
}

double line_avoids_ball_margin(const CVec& v, const Direction& u, double ball_radius) {
    return line_distance_from_origin(v, u) - ball_radius;
}

bool line_avoids_ball(const CVec& v, const Direction& u, double ball_radius) {
    return line_avoids_ball_margin(v, u, ball_radius) > 0.0;
}

double orthocap_separation(const CVec& v, const CVec& w, const Direction& u,
                           const Shell& shell) {
    const CVec w_par = project_span(u, w);
    const double a = norm2(w_par);
    const double outer_sq = shell.radius * shell.radius - a * a;
    if (outer_sq <= 0.0) throw Error("empty-intersection");
    const double rho2 = std::sqrt(outer_sq);
    const double inner_sq = shell.inner() * shell.inner() - a * a;
    const double rho1 = inner_sq > 0.0 ? std::sqrt(inner_sq) : 0.0;

    const CVec v_par = project_span(u, v);
    const double dpar = norm2(v_par - w_par);
    const double t = norm2(v - v_par);
    double dperp = 0.0;
    if (t < rho1)
        dperp = rho1 - t;
    else if (t > rho2)
        dperp = t - rho2;
    return std::hypot(dpar, dperp);
}

}  // namespace discurve
