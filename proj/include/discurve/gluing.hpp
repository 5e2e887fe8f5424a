#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "discurve/analytic_map.hpp"
#include "discurve/core.hpp"

namespace discurve {

using ScalarField = std::function<cplx(cplx)>;
using VectorField = std::function<CVec(cplx)>;

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// A polar quadrature box [r0,r1] x [t0,t1], possibly pushed forward through
/// a conformal chart T (nodes T(r e^{it}), weights scaled by |T'|^2).
struct PolarBox {
    double r0 = 0.0, r1 = 0.0, t0 = 0.0, t1 = 0.0;
    std::function<cplx(cplx)> chart;        // identity when empty
    std::function<cplx(cplx)> chart_deriv;  // required with chart
};

/// Discretized Cauchy transform u(z) = (1/pi) iint rhs(w)/(z-w) dA(w), the
/// bounded solution of dbar u = rhs.
///
/// Two backends: a uniform polar grid over the whole unit disc with exact
/// second-order singularity subtraction (the probe formulas stay smooth in
/// z), and a union of polar boxes for compactly supported data, with
/// recursive near-field subdivision and a contour-integral rule for the cell
/// containing the probe.
class CauchyTransform {
  public:
    static CauchyTransform disc_grid(ScalarField rhs, int n_r = 256, int n_t = 256);
    static CauchyTransform from_boxes(ScalarField rhs, std::vector<PolarBox> boxes,
                                      int gl_order = 12);

    cplx operator()(cplx z) const;
    std::size_t node_count() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Spec-level entry point: solve dbar u = rhs on the closed unit disc.
CauchyTransform dbar_solve(ScalarField rhs, int n_r = 256, int n_t = 256);

// Max |dbar u - rhs| over probes, dbar by central finite differences.
double dbar_residual(const std::function<cplx(cplx)>& u, const ScalarField& rhs,
                     const std::vector<cplx>& probes, double h = 1e-4);

// Max deviation from the circle-mean property over probes: a cheap
// holomorphy certificate that does not amplify quadrature noise.
double mean_value_residual(const std::function<cplx(cplx)>& f,
                           const std::vector<cplx>& probes, double rho = 0.02,
                           int n = 64);

/// A two-set cover A ∪ B = closed disc with separated differences, plus the
/// smooth cutoff driving the splitting (chi = 1 near B\A, 0 near A\B) and
/// quadrature boxes covering supp(dbar chi).
struct CartanDecomposition {
    std::function<bool(cplx)> in_A, in_B;
    std::function<double(cplx)> chi;
    ScalarField dbar_chi;
    std::vector<PolarBox> ramp_boxes;
    std::vector<cplx> probes_A, probes_B, probes_C;
    int gl_order = 12;
};

// A = closed disc of radius a_outer, B = closed annulus [b_inner, 1], cutoff
// ramping radially across [ramp_lo, ramp_hi] inside C = A ∩ B.
CartanDecomposition radial_decomposition(double a_outer = 0.85, double b_inner = 0.6,
                                         double ramp_lo = 0.68, double ramp_hi = 0.8,
                                         int boxes_r = 2, int boxes_t = 48);

struct ScalarSplit {
    std::function<cplx(cplx)> a, b;  // holomorphic on A resp. B
    double norm_a = 0.0, norm_b = 0.0, norm_c = 0.0;
};

/// Bounded linear splitting c = a - b on C with holomorphic pieces; the
/// measured operator bound is norm_a / norm_c per datum.
class SplitOperators {
  public:
    explicit SplitOperators(CartanDecomposition decomp) : decomp_(std::move(decomp)) {}

    ScalarSplit split(const ScalarField& c) const;
    const CartanDecomposition& decomposition() const { return decomp_; }

  private:
    CartanDecomposition decomp_;
};

ScalarSplit cousin_split(const ScalarField& c, const CartanDecomposition& decomp,
                         double holomorphy_tol = 1e-3);

struct AmalgamationResult {
    AnalyticMap glued;
    double deviation_A = 0.0;  // sup |F - f| over A probes
    double deviation_B = 0.0;  // sup |F - g| over B probes
    double norm_c = 0.0;       // sup |f - g| over C probes
    double empirical_M = 0.0;
    double fit_residual = 0.0;
    Report report;
};

AmalgamationResult amalgamate(const VectorField& f, const VectorField& g, int dimension,
                              const CartanDecomposition& decomp, int fit_degree,
                              double bound_slack = 2.0, double reference_M = -1.0);

// Empirical operator bound over `trials` random low-degree Cousin data.
struct MStats {
    double min_ratio = 0.0, max_ratio = 0.0;
};
MStats measure_M(const CartanDecomposition& decomp, int trials, std::uint64_t seed);

}  // namespace discurve
