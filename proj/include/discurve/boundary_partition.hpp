#pragma once

#include <optional>
#include <vector>

#include "discurve/analytic_map.hpp"
#include "discurve/ball_geometry.hpp"
#include "discurve/core.hpp"
#include "discurve/induced_metric.hpp"
#include "discurve/riemann_hilbert.hpp"

namespace discurve {

// Horner evaluation without the closed-domain check: the stored series is a
// polynomial, and the exposing construction works in the ambient plane.
CVec evaluate_extended(const AnalyticMap& map, cplx z);
cplx evaluate_extended_component(const AnalyticMap& map, int comp, cplx z);

struct SplitOptions {
    double diameter_tol = -1.0;  // auto from the separation budget when < 0
    int min_arcs = 3;
    int max_arcs = 4096;
    double set_pad = 1.6;     // patch radius = pad * arc image radius
    int boundary_grid = 8192;
    int sample_triples = 1000;
    std::uint64_t seed = 2024;
    double eps_hat_floor = 1e-5;
};

/// The boundary splitting: arcs of small image diameter, their endpoint
/// data, witness points on the outer shell reachable along the f-extended
/// rays, and the certified patch system around each arc image.
struct ArcPartition {
    std::vector<double> breakpoints;  // ascending angles, arcs[j] = [b[j-1], b[j]]
    std::vector<CVec> endpoint_dirs;  // f(p_j), the preserved directions
    std::vector<CVec> witnesses;      // a_j in the outer shell
    std::vector<cplx> witness_seeds;  // q_j: ambient preimages of the witnesses
    std::vector<CVec> patch_centers;  // patch U_j covers f(arc_j)
    std::vector<double> patch_radii;
    double eps_hat = 0.0;  // possibly decreased from the requested value
    double delta = 0.0;
    Shell outer_shell{1.0, 0.5};  // (s_hat, eps_hat)
    double s = 0.0, eps = 0.0;
    Report cert;

    int arc_count() const { return int(breakpoints.size()); }
    double arc_lo(int j) const;
    double arc_hi(int j) const { return breakpoints[std::size_t(j)]; }
    // patch index of the arc through angle theta
    int arc_of(double theta) const;
};

ArcPartition split_boundary(const AnalyticMap& f, const Shell& shell, double delta,
                            double eps_hat, const SplitOptions& opt = {});

struct RegionParams {
    double tube1 = 0.10, tube2 = 0.045, cap3 = 0.03;  // initial sizes
    int halvings = 6;
    double lens_margin = 0.25;   // fraction of the arc kept clear of the lens corners
    double collar_frac = 0.5;    // collar depth as a fraction of the lens depth
    int grid = 40;               // per-region sampling
};

/// Nested tubes around each spike preimage, tip caps, and the boundary
/// lens discs with their active windows.
struct RegionSystem {
    // indexed like the partition breakpoints (one spike per breakpoint)
    std::vector<std::vector<cplx>> sigma1, sigma2;  // preimage polylines
    std::vector<double> w1, w2, w3;                 // tube and cap sizes
    std::vector<double> cap_footprint;              // boundary half-width of the tip cap
    // per-arc lens data
    std::vector<LensDisc> lenses;
    std::vector<double> win_lo, win_hi;        // active window (global angles)
    std::vector<double> collar_lo, collar_hi;  // collar window (global angles)
    std::vector<double> collar_depth;          // in lens zeta coordinates
    Report cert;

    bool in_tube1(int j, cplx z) const;
    bool in_tube2(int j, cplx z) const;
    bool in_cap3(int j, cplx z) const;
};

double dist_to_polyline(cplx z, const std::vector<cplx>& poly);

/// Builds and certifies the region system for an exposed map f0: tube sizes
/// are halved until the membership and image certificates pass (or the cap
/// is hit, leaving negative margins in the report).
RegionSystem build_regions(const ArcPartition& part, const AnalyticMap& f0,
                           const std::vector<std::vector<cplx>>& sigma1,
                           const std::vector<std::vector<cplx>>& sigma2,
                           const RegionParams& params = {});

/// Minimum over test curves and Borel splittings (prefix splits plus seeded
/// random interval unions) of the two-way min-projected-length sum, minus
/// delta.  Curves must connect the tube exterior to the inner tube.
double condition_d9_margin(const AnalyticMap& f0, const ArcPartition& part,
                           const RegionSystem& regions, int j,
                           const std::vector<ParamCurve>& test_curves,
                           std::uint64_t seed = 7, int random_splits = 1000);

// The standard test-curve family for one spike: the spine and jittered
// copies crossing the outer tube into the inner one.
std::vector<ParamCurve> standard_d9_curves(const RegionSystem& regions, int j,
                                           std::uint64_t seed = 11);

}  // namespace discurve
