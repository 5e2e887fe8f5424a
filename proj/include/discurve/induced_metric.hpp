#pragma once

#include <vector>

#include "discurve/analytic_map.hpp"
#include "discurve/core.hpp"

namespace discurve {

/// Ordered samples of a curve in the closed domain.
struct ParamCurve {
    std::vector<cplx> samples;
    bool closed = false;
};

/// Structured polar mesh on the closed disc of radius `outer` (optionally an
/// annulus when inner > 0).  Node (ir, it) sits at r(ir) * e^{i theta(it)};
/// the disc mesh carries a single extra node at the origin.
struct PolarMesh {
    int n_radial = 0;   // ring count (rings 1..n_radial; ring 0 is the center/inner circle)
    int n_angular = 0;  // power of two
    double inner = 0.0;
    double outer = 1.0;

    bool has_center() const { return inner == 0.0; }
    std::size_t node_count() const;
    cplx node(std::size_t idx) const;
    std::size_t index(int ir, int it) const;
};

/// |df| sampled on the mesh, the conformal factor of the induced metric.
struct MetricField {
    PolarMesh mesh;
    std::vector<double> factor;  // per node
    double min_factor = 0.0;
    double max_factor = 0.0;
};

MetricField build_metric_field(const AnalyticMap& map, const PolarMesh& mesh);

// Length of the image of `curve` under `map`: adaptive composite trapezoid of
// |df(g(t))| |g'(t)| refined to 1e-6 relative.  Throws "refinement-cap".
double image_length(const AnalyticMap& map, const ParamCurve& curve);

struct DistanceBracket {
    double lower = 0.0;  // certified under-estimate
    double upper = 0.0;  // graph path length (over-estimate of the infimum)
    int n_radial = 0, n_angular = 0;
};

/// Shortest-path distance in the induced metric from z0 to the circle
/// |z| = outer_radius, with both bracket sides.  Subdivides the mesh until
/// successive upper values differ by < rel_tol, starting at (nr0, nt0).
DistanceBracket boundary_distance(const AnalyticMap& map, cplx z0,
                                  double outer_radius, double rel_tol = 1e-3,
                                  int nr0 = 96, int nt0 = 256, int max_rounds = 3);

// Distance field from z0 on a fixed mesh (upper-bracket weights); used for
// CSV dumps.
std::vector<double> distance_field(const MetricField& field, cplx z0);

/// One row of the completeness table: measured intrinsic distance at step n
/// against the target rho_n / 2.
struct CompletenessRow {
    int n = 0;
    double measured_lower = 0.0;
    double measured_upper = 0.0;
    double rho_n = 0.0;
};

Report completeness_certificate(const std::vector<CompletenessRow>& rows);

}  // namespace discurve
