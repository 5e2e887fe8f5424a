#pragma once

#include <functional>

#include "discurve/analytic_map.hpp"
#include "discurve/ball_geometry.hpp"
#include "discurve/core.hpp"

namespace discurve {

using VectorFn = std::function<CVec(cplx)>;

/// A smoothly bounded disc attached to the unit-circle arc (theta_a, theta_b):
/// the region between that arc and the circle through both endpoints meeting
/// the unit circle at right angles.  Carries the explicit conformal chart
/// from the unit zeta-disc (Mobius -> square -> Cayley chain).  whole_disc
/// mode makes the chart the identity.
struct LensDisc {
    double theta_a = 0.0, theta_b = 0.0;
    bool whole_disc = false;

    cplx corner_A, corner_B;   // e^{i theta_a}, e^{i theta_b}
    cplx ortho_center;         // center of the orthogonal circle
    double ortho_radius = 0.0;
    double rot_phase = 0.0;    // wedge alignment
    bool flip = false;         // wedge orientation

    cplx to_disc(cplx z) const;         // T^{-1}: lens -> zeta-disc
    cplx from_disc(cplx zeta) const;    // T
    cplx chart_deriv(cplx zeta) const;  // T'
    bool contains(cplx z, double tol = 1e-9) const;
    double depth() const;  // radial reach below the unit circle

    // zeta-boundary angle of the global boundary point e^{i theta}
    double boundary_tau(double theta) const;
    // inverse: global boundary angle at the zeta-boundary angle tau
    // (valid only on the outer-arc part of the zeta circle)
    double global_theta(double tau) const;
};

LensDisc make_lens(double theta_a, double theta_b);
LensDisc whole_disc_lens();

/// Family of analytic discs attached to the boundary trace of a center map:
/// g(tau, z) = center(tau) + radius(tau) * z * e, with e spanning the
/// orthogonal complement of span_dir.  radius vanishes (down to a tiny
/// positive floor used by the outer-function construction) outside the
/// active window.
struct BoundaryDiscFamily {
    LensDisc lens;
    VectorFn center;  // global coordinates
    CVec span_dir;    // the preserved complex direction
    CVec perp_dir;    // unit spanning vector of its orthogonal complement
    std::function<double(double)> radius_at;  // tau on the zeta boundary
    double max_radius = 0.0;
    double floor_value = 1e-9;
    double win_lo = 0.0, win_hi = 0.0;  // active window, zeta angles
    int dimension = 2;

    CVec center_at(double tau) const;
    bool in_window(double tau) const;
};

struct RhOptions {
    int n_start = 8;
    int n_cap = 1 << 14;
    int boundary_nodes = 1024;   // power of two
    int radius_grid = 64;
    int log_modes = 192;         // outer-function Fourier truncation
    double fit_tolerance = 1e-6; // relative to the disc scale
    // lens mode only: corner neighborhoods excluded from the sampled
    // boundary/ring certificates (the chart derivative is unbounded there;
    // nothing downstream consumes the solution near the corners)
    double corner_guard = 0.12;
};

struct RhSolution {
    AnalyticMap h;  // on the zeta-disc
    LensDisc lens;
    double r_prime = 0.0;
    int winding = 0;
    Report bullets;
    double center_fit_residual = 0.0;

    CVec eval_global(cplx z) const;  // h(T^{-1}(z))
};

/// Approximate Riemann-Hilbert solution: h tracks the disc boundaries over
/// the active window, stays eps-close to the family's closed discs on outer
/// rings r >= r_prime, and eps-close to the center map on |zeta| <= r_prime
/// and away from the window.
RhSolution solve_rh(const BoundaryDiscFamily& family, double eps, double r,
                    const RhOptions& opt = {});

// Violation measure of the second solution property at a fixed winding
// degree (used by the monotonicity property test).
double rh_ring_violation(const BoundaryDiscFamily& family, double eps, double r,
                         int winding, const RhOptions& opt = {});

/// Family over a lens boundary whose discs reach the outer shell across the
/// window: radius solves |proj|^2 + radius^2 = (mid-shell)^2 pointwise.
/// Throws "unreachable-shell" when the orthogonal line cannot reach it.
BoundaryDiscFamily build_family_for_arc(const VectorFn& f0, int dimension,
                                        const LensDisc& lens, const Direction& direction,
                                        const Shell& shell_out, double win_lo_theta,
                                        double win_hi_theta, double taper,
                                        double floor_value = 1e-4);

// Margins for the three deformation guarantees of a solution against its
// base map: shell membership over the boundary arc, projection closeness on
// the whole lens, plainness off the collar window.
Report certify_f_conditions(const RhSolution& sol, const VectorFn& f0,
                            const Direction& direction, const Shell& shell,
                            double eps, double collar_lo_tau, double collar_hi_tau,
                            double collar_depth);

}  // namespace discurve
