#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "discurve/core.hpp"

namespace discurve {

// Error with a stable machine-readable code (e.g. "point-outside-domain").
struct Error : std::runtime_error {
    std::string code;
    explicit Error(std::string c, const std::string& what = {})
        : std::runtime_error(what.empty() ? c : c + ": " + what), code(std::move(c)) {}
};

enum class DomainKind { Disc, Annulus };

/// A holomorphic map from the closed unit disc (or a circular annulus) into
/// C^n, stored as truncated power/Laurent series per component.  The
/// represented function is exactly holomorphic; evaluation anywhere in the
/// closed domain is a finite Horner sum.
struct AnalyticMap {
    // Disc: coefficients[c][k] multiplies z^k, k = 0..degree.
    // Annulus: coefficients[c][k] multiplies z^(k-degree), k = 0..2*degree.
    std::vector<std::vector<cplx>> components;
    DomainKind domain_kind = DomainKind::Disc;
    double inner_radius = 0.0;  // annulus only, in (0,1)
    int degree = 0;

    int dimension() const { return int(components.size()); }
    bool in_domain(cplx z, double slack = 1e-12) const;
    void validate() const;
};

AnalyticMap make_map(std::vector<std::vector<cplx>> coeffs);
AnalyticMap make_annulus_map(std::vector<std::vector<cplx>> laurent, double inner_radius);

// The model curve z -> (s*z, 0, ..., 0) in dimension n.
AnalyticMap make_scaled_identity(double s, int n = 2);

/// Equispaced samples of a boundary trace.  count is the per-circle node
/// count, a power of two >= 256; values hold the outer circle first, then
/// (annulus only) the inner circle.
struct BoundarySamples {
    std::size_t count = 0;
    DomainKind domain_kind = DomainKind::Disc;
    double inner_radius = 0.0;
    bool offset_half = false;  // nodes at 2*pi*(m+1/2)/count instead of 2*pi*m/count
    std::vector<CVec> values;

    void validate() const;
};

struct FitResult {
    AnalyticMap map;
    double residual = 0.0;  // RMS mismatch at the sample nodes
};

CVec evaluate(const AnalyticMap& map, cplx z);
cplx evaluate_component(const AnalyticMap& map, int comp, cplx z);

AnalyticMap derivative(const AnalyticMap& map);

// |df(z)| = sqrt(sum_i |f_i'(z)|^2), with the derivative map precomputed.
double deriv_modulus(const AnalyticMap& dmap, cplx z);

enum class Region { ClosedDomain, Boundary };

double sup_norm(const AnalyticMap& map, Region region = Region::ClosedDomain);

double min_derivative_modulus(const AnalyticMap& map);

FitResult fit_from_boundary(const BoundarySamples& samples, int degree,
                            double residual_tolerance = -1.0);

// Samples a map's boundary trace on `count` nodes per circle.
BoundarySamples sample_boundary(const AnalyticMap& map, std::size_t count);

// Refit of map(m(z)) with m(z) = e^{i*theta} (z - a) / (1 - conj(a) z), at
// `degree` (default: max(64, map.degree); composition is not degree-preserving).
FitResult compose_mobius(const AnalyticMap& map, cplx a, double theta, int degree = -1);

// Values of one component on the circle |z| = rho at `count` equispaced
// angles (count a power of two), via FFT synthesis of rho^k-scaled bins.
std::vector<cplx> circle_values_of(const AnalyticMap& map, int comp, double rho,
                                   std::size_t count);

// Pointwise arithmetic on equal-shape maps.
AnalyticMap map_sub(const AnalyticMap& a, const AnalyticMap& b);
AnalyticMap map_scale(const AnalyticMap& a, cplx s);

}  // namespace discurve
