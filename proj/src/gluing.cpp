#include "discurve/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace discurve {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(std::size_t(n), 0.0);
    weights.assign(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[std::size_t(i)] = x;
        weights[std::size_t(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

struct GlRule {
    std::vector<double> x, w;
};

const GlRule& gl_rule(int n) {
    static std::vector<GlRule> cache(65);
    auto& r = cache[std::size_t(n)];
    if (r.x.empty()) gauss_legendre(n, r.x, r.w);
    return r;
}

cplx box_point(const PolarBox& b, double r, double t) {
    cplx zeta = std::polar(r, t);
    return b.chart ? b.chart(zeta) : zeta;
}

double box_jacobian(const PolarBox& b, double r, double t) {
    if (!b.chart_deriv) return 1.0;
    return std::norm(b.chart_deriv(std::polar(r, t)));
}

// crude but conservative geometry of the pushed-forward box
void box_metrics(const PolarBox& b, cplx& center, double& radius) {
    cplx c1 = box_point(b, b.r0, b.t0), c2 = box_point(b, b.r0, b.t1);
    cplx c3 = box_point(b, b.r1, b.t0), c4 = box_point(b, b.r1, b.t1);
    cplx mid = box_point(b, 0.5 * (b.r0 + b.r1), 0.5 * (b.t0 + b.t1));
    center = 0.2 * (c1 + c2 + c3 + c4 + mid);
    radius = 0.0;
    for (cplx c : {c1, c2, c3, c4, mid}) radius = std::max(radius, std::abs(c - center));
    // sample edges for charts with curvature
    for (double s : {0.25, 0.5, 0.75}) {
        for (cplx c : {box_point(b, b.r0 + s * (b.r1 - b.r0), b.t0),
                       box_point(b, b.r0 + s * (b.r1 - b.r0), b.t1),
                       box_point(b, b.r0, b.t0 + s * (b.t1 - b.t0)),
                       box_point(b, b.r1, b.t0 + s * (b.t1 - b.t0))})
            radius = std::max(radius, std::abs(c - center));
    }
}

// iint_box dA/(z-w) via Stokes: (1/2i) * contour integral of
// conj(w-z)/(z-w) dw along the (pushed-forward) box boundary, CCW.
cplx cell_cauchy_moment(const PolarBox& b, cplx z) {
    const GlRule& g = gl_rule(24);
    auto side = [&](auto param, auto dparam, double a0, double a1) {
        cplx acc{0.0, 0.0};
        // split each side at its midpoint to keep nodes off the probe
        for (int half = 0; half < 2; ++half) {
            double lo = half == 0 ? a0 : 0.5 * (a0 + a1);
            double hi = half == 0 ? 0.5 * (a0 + a1) : a1;
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[k];
                cplx w = param(s);
                cplx dw = dparam(s) * (0.5 * (hi - lo) * g.w[k]);
                cplx d = z - w;
                if (std::norm(d) < 1e-28) d = cplx{1e-14, 0.0};
                acc += std::conj(w - z) / d * dw;
            }
        }
        return acc;
    };
    auto chart = [&](cplx zeta) { return b.chart ? b.chart(zeta) : zeta; };
    auto chart_d = [&](cplx zeta) { return b.chart_deriv ? b.chart_deriv(zeta) : cplx{1.0, 0.0}; };

    cplx total{0.0, 0.0};
    // outer arc r = r1, t: t0 -> t1
    total += side([&](double t) { return chart(std::polar(b.r1, t)); },
                  [&](double t) {
                      cplx zeta = std::polar(b.r1, t);
                      return chart_d(zeta) * cplx{0.0, 1.0} * zeta;
                  },
                  b.t0, b.t1);
    // segment t = t1, r: r1 -> r0
    total += side([&](double r) { return chart(std::polar(r, b.t1)); },
                  [&](double r) { return chart_d(std::polar(r, b.t1)) * std::polar(1.0, b.t1); },
                  b.r1, b.r0);
    // inner arc r = r0, t: t1 -> t0
    total += side([&](double t) { return chart(std::polar(b.r0, t)); },
                  [&](double t) {
                      cplx zeta = std::polar(b.r0, t);
                      return chart_d(zeta) * cplx{0.0, 1.0} * zeta;
                  },
                  b.t1, b.t0);
    // segment t = t0, r: r0 -> r1
    total += side([&](double r) { return chart(std::polar(r, b.t0)); },
                  [&](double r) { return chart_d(std::polar(r, b.t0)) * std::polar(1.0, b.t0); },
                  b.r0, b.r1);
    return total / cplx{0.0, 2.0};
}

}  // namespace

struct CauchyTransform::Impl {
    bool disc_mode = false;
    ScalarField rhs;

    // disc mode
    std::vector<cplx> nodes;
    std::vector<double> weights;
    std::vector<cplx> values;

    // box mode
    std::vector<PolarBox> boxes;
    std::vector<cplx> box_center;
    std::vector<double> box_radius;
    std::vector<std::size_t> box_begin;  // node ranges per box
    int gl_order = 12;

    cplx box_sum_far(std::size_t bi, cplx z) const {
        cplx acc{0.0, 0.0};
        for (std::size_t k = box_begin[bi]; k < box_begin[bi + 1]; ++k)
            acc += weights[k] * values[k] / (z - nodes[k]);
        return acc;
    }

    cplx box_fresh(const PolarBox& b, cplx z, int order) const {
        const GlRule& g = gl_rule(order);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double r = 0.5 * (b.r0 + b.r1) + 0.5 * (b.r1 - b.r0) * g.x[i];
            double wr = 0.5 * (b.r1 - b.r0) * g.w[i];
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                double t = 0.5 * (b.t0 + b.t1) + 0.5 * (b.t1 - b.t0) * g.x[j];
                double wt = 0.5 * (b.t1 - b.t0) * g.w[j];
                cplx w = box_point(b, r, t);
                cplx d = z - w;
                if (std::norm(d) < 1e-28) continue;
                acc += wr * wt * r * box_jacobian(b, r, t) * rhs(w) / d;
            }
        }
        return acc;
    }

    cplx box_near(const PolarBox& b, cplx z, int depth) const {
        cplx center;
        double radius;
        box_metrics(b, center, radius);
        if (std::abs(z - center) > 1.6 * radius) return box_fresh(b, z, 16);
        if (depth >= 9 || radius < 2e-4) {
            // singular cell: subtract the probe value, add its exact moment
            cplx c0 = rhs(z);
            const GlRule& g = gl_rule(12);
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < g.x.size(); ++i) {
                double r = 0.5 * (b.r0 + b.r1) + 0.5 * (b.r1 - b.r0) * g.x[i];
                double wr = 0.5 * (b.r1 - b.r0) * g.w[i];
                for (std::size_t j = 0; j < g.x.size(); ++j) {
                    double t = 0.5 * (b.t0 + b.t1) + 0.5 * (b.t1 - b.t0) * g.x[j];
                    double wt = 0.5 * (b.t1 - b.t0) * g.w[j];
                    cplx w = box_point(b, r, t);
                    cplx d = z - w;
                    if (std::norm(d) < 1e-28) continue;
                    acc += wr * wt * r * box_jacobian(b, r, t) * (rhs(w) - c0) / d;
                }
            }
            return acc + c0 * cell_cauchy_moment(b, z);
        }
        // split along the geometrically longer direction
        PolarBox lo = b, hi = b;
        double rspan = (b.r1 - b.r0);
        double tspan = (b.t1 - b.t0) * 0.5 * (b.r0 + b.r1);
        if (rspan > tspan) {
            double mid = 0.5 * (b.r0 + b.r1);
            lo.r1 = mid;
            hi.r0 = mid;
        } else {
            double mid = 0.5 * (b.t0 + b.t1);
            lo.t1 = mid;
            hi.t0 = mid;
        }
        return box_near(lo, z, depth + 1) + box_near(hi, z, depth + 1);
    }
};

CauchyTransform CauchyTransform::disc_grid(ScalarField rhs, int n_r, int n_t) {
    auto impl = std::make_shared<Impl>();
    impl->disc_mode = true;
    impl->rhs = rhs;
    const double dr = 1.0 / double(n_r);
    const double dt = 2.0 * kPi / double(n_t);
    impl->nodes.reserve(std::size_t(n_r) * std::size_t(n_t));
    for (int i = 0; i < n_r; ++i) {
        double r = (double(i) + 0.5) * dr;
        for (int j = 0; j < n_t; ++j) {
            cplx w = std::polar(r, (double(j) + 0.5) * dt);
            impl->nodes.push_back(w);
            impl->weights.push_back(r * dr * dt);
            impl->values.push_back(rhs(w));
        }
    }
    CauchyTransform ct;
    ct.impl_ = impl;
    return ct;
}

CauchyTransform CauchyTransform::from_boxes(ScalarField rhs, std::vector<PolarBox> boxes,
                                            int gl_order) {
    auto impl = std::make_shared<Impl>();
    impl->disc_mode = false;
    impl->rhs = rhs;
    impl->boxes = std::move(boxes);
    impl->gl_order = gl_order;
    const GlRule& g = gl_rule(gl_order);
    for (const PolarBox& b : impl->boxes) {
        impl->box_begin.push_back(impl->nodes.size());
        cplx center;
        double radius;
        box_metrics(b, center, radius);
        impl->box_center.push_back(center);
        impl->box_radius.push_back(radius);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double r = 0.5 * (b.r0 + b.r1) + 0.5 * (b.r1 - b.r0) * g.x[i];
            double wr = 0.5 * (b.r1 - b.r0) * g.w[i];
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                double t = 0.5 * (b.t0 + b.t1) + 0.5 * (b.t1 - b.t0) * g.x[j];
                double wt = 0.5 * (b.t1 - b.t0) * g.w[j];
                impl->nodes.push_back(box_point(b, r, t));
                impl->weights.push_back(wr * wt * r * box_jacobian(b, r, t));
                impl->values.push_back(rhs(impl->nodes.back()));
            }
        }
    }
    impl->box_begin.push_back(impl->nodes.size());
    CauchyTransform ct;
    ct.impl_ = impl;
    return ct;
}

std::size_t CauchyTransform::node_count() const { return impl_->nodes.size(); }

cplx CauchyTransform::operator()(cplx z) const {
    const Impl& im = *impl_;
    if (!im.disc_mode) {
        cplx acc{0.0, 0.0};
        for (std::size_t bi = 0; bi + 1 < im.box_begin.size(); ++bi) {
            if (std::abs(z - im.box_center[bi]) > 1.6 * im.box_radius[bi])
                acc += im.box_sum_far(bi, z);
            else
                acc += im.box_near(im.boxes[bi], z, 0);
        }
        return acc / kPi;
    }
    if (std::abs(z) >= 1.0) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < im.nodes.size(); ++k) {
            cplx d = z - im.nodes[k];
            if (std::norm(d) < 1e-24) continue;
            acc += im.weights[k] * im.values[k] / d;
        }
        return acc / kPi;
    }
    // Singularity subtraction of the full 2-jet of rhs at z.  The disc
    // transforms of 1, (w-z), conj(w-z), (w-z)^2, |w-z|^2, conj(w-z)^2 are
    // conj(z), -1, -conj(z)^2/2, z, conj(z), conj(z)^3/3.
    const double h = 1e-5, h2 = 5e-4;
    auto rhs_at = [&](cplx w) { return im.rhs(w); };
    const cplx c0 = rhs_at(z);
    const cplx gx = (rhs_at(z + h) - rhs_at(z - h)) / (2.0 * h);
    const cplx gy = (rhs_at(z + cplx{0.0, h}) - rhs_at(z - cplx{0.0, h})) / (2.0 * h);
    const cplx a = 0.5 * (gx - cplx{0.0, 1.0} * gy);  // d rhs / dw
    const cplx b = 0.5 * (gx + cplx{0.0, 1.0} * gy);  // d rhs / d conj(w)
    const cplx i1{0.0, 1.0};
    const cplx fxx = (rhs_at(z + h2) - 2.0 * c0 + rhs_at(z - h2)) / (h2 * h2);
    const cplx fyy = (rhs_at(z + i1 * h2) - 2.0 * c0 + rhs_at(z - i1 * h2)) / (h2 * h2);
    const cplx fxy = (rhs_at(z + h2 + i1 * h2) - rhs_at(z + h2 - i1 * h2) -
                      rhs_at(z - h2 + i1 * h2) + rhs_at(z - h2 - i1 * h2)) /
                     (4.0 * h2 * h2);
    const cplx p = 0.25 * (fxx - fyy - 2.0 * i1 * fxy);  // d2/dw2
    const cplx q = 0.25 * (fxx + fyy);                   // d2/dw dconj(w)
    const cplx r = 0.25 * (fxx - fyy + 2.0 * i1 * fxy);  // d2/dconj(w)2
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < im.nodes.size(); ++k) {
        cplx d = z - im.nodes[k];
        if (std::norm(d) < 1e-24) continue;
        cplx wz = im.nodes[k] - z;
        cplx jet = c0 + a * wz + b * std::conj(wz) + 0.5 * p * wz * wz +
                   q * wz * std::conj(wz) + 0.5 * r * std::conj(wz) * std::conj(wz);
        acc += im.weights[k] * (im.values[k] - jet) / d;
    }
    acc /= kPi;
    const cplx zb = std::conj(z);
    return acc + c0 * zb - a - 0.5 * b * zb * zb + 0.5 * p * z + q * zb +
           0.5 * r * zb * zb * zb / 3.0;
}

CauchyTransform dbar_solve(ScalarField rhs, int n_r, int n_t) {
    return CauchyTransform::disc_grid(std::move(rhs), n_r, n_t);
}

double dbar_residual(const std::function<cplx(cplx)>& u, const ScalarField& rhs,
                     const std::vector<cplx>& probes, double h) {
    double worst = 0.0;
    for (cplx z : probes) {
        cplx ux = (u(z + h) - u(z - h)) / (2.0 * h);
        cplx uy = (u(z + cplx{0.0, h}) - u(z - cplx{0.0, h})) / (2.0 * h);
        cplx db = 0.5 * (ux + cplx{0.0, 1.0} * uy);
        worst = std::max(worst, std::abs(db - rhs(z)));
    }
    return worst;
}

double mean_value_residual(const std::function<cplx(cplx)>& f,
                           const std::vector<cplx>& probes, double rho, int n) {
    double worst = 0.0;
    for (cplx z : probes) {
        cplx mean{0.0, 0.0};
        for (int k = 0; k < n; ++k)
            mean += f(z + std::polar(rho, 2.0 * kPi * double(k) / double(n)));
        mean /= double(n);
        worst = std::max(worst, std::abs(mean - f(z)));
    }
    return worst;
}

CartanDecomposition radial_decomposition(double a_outer, double b_inner,
                                         double ramp_lo, double ramp_hi, int boxes_r,
                                         int boxes_t) {
    if (!(b_inner < ramp_lo && ramp_lo < ramp_hi && ramp_hi < a_outer))
        throw Error("bad-decomposition", "ramp must sit inside the overlap");
    CartanDecomposition d;
    d.in_A = [=](cplx z) { return std::abs(z) <= a_outer + 1e-12; };
    d.in_B = [=](cplx z) { return std::abs(z) >= b_inner - 1e-12; };
    d.chi = [=](cplx z) {
        return smoothstep((std::abs(z) - ramp_lo) / (ramp_hi - ramp_lo));
    };
    d.dbar_chi = [=](cplx z) -> cplx {
        double r = std::abs(z);
        if (r <= ramp_lo || r >= ramp_hi || r == 0.0) return {0.0, 0.0};
        double s = smoothstep_deriv((r - ramp_lo) / (ramp_hi - ramp_lo)) / (ramp_hi - ramp_lo);
        return s * z / (2.0 * r);
    };
    for (int i = 0; i < boxes_r; ++i) {
        double r0 = ramp_lo + (ramp_hi - ramp_lo) * double(i) / double(boxes_r);
        double r1 = ramp_lo + (ramp_hi - ramp_lo) * double(i + 1) / double(boxes_r);
        for (int j = 0; j < boxes_t; ++j) {
            PolarBox b;
            b.r0 = r0;
            b.r1 = r1;
            b.t0 = 2.0 * kPi * double(j) / double(boxes_t);
            b.t1 = 2.0 * kPi * double(j + 1) / double(boxes_t);
            d.ramp_boxes.push_back(b);
        }
    }

    for (int i = 1; i <= 24; ++i) {
        double r = double(i) / 24.0;
        for (int j = 0; j < 64; ++j) {
            cplx z = std::polar(r * 0.999, 2.0 * kPi * (double(j) + 0.37) / 64.0);
            if (d.in_A(z)) d.probes_A.push_back(z);
            if (d.in_B(z)) d.probes_B.push_back(z);
            if (d.in_A(z) && d.in_B(z)) d.probes_C.push_back(z);
        }
    }
    return d;
}

ScalarSplit SplitOperators::split(const ScalarField& c) const {
    return cousin_split(c, decomp_, -1.0);
}

ScalarSplit cousin_split(const ScalarField& c, const CartanDecomposition& decomp,
                         double holomorphy_tol) {
    if (holomorphy_tol > 0.0) {
        std::vector<cplx> probes(decomp.probes_C.begin(),
                                 decomp.probes_C.begin() +
                                     std::min<std::size_t>(32, decomp.probes_C.size()));
        double res = dbar_residual(c, [](cplx) { return cplx{0.0, 0.0}; }, probes);
        if (res > holomorphy_tol)
            throw Error("residual-too-large", "Cousin datum is not holomorphic on C");
    }

    ScalarField rhs = [c, dchi = decomp.dbar_chi](cplx w) { return c(w) * dchi(w); };
    auto u = std::make_shared<CauchyTransform>(
        CauchyTransform::from_boxes(rhs, decomp.ramp_boxes, decomp.gl_order));
    auto chi = decomp.chi;

    ScalarSplit out;
    out.a = [u, chi, c](cplx z) {
        double x = chi(z);
        cplx base = x > 0.0 ? x * c(z) : cplx{0.0, 0.0};
        return base - (*u)(z);
    };
    out.b = [u, chi, c](cplx z) {
        double x = chi(z);
        cplx base = x < 1.0 ? (x - 1.0) * c(z) : cplx{0.0, 0.0};
        return base - (*u)(z);
    };
    for (cplx z : decomp.probes_A) out.norm_a = std::max(out.norm_a, std::abs(out.a(z)));
    for (cplx z : decomp.probes_B) out.norm_b = std::max(out.norm_b, std::abs(out.b(z)));
    for (cplx z : decomp.probes_C) out.norm_c = std::max(out.norm_c, std::abs(c(z)));
    return out;
}

AmalgamationResult amalgamate(const VectorField& f, const VectorField& g, int dimension,
                              const CartanDecomposition& decomp, int fit_degree,
                              double bound_slack, double reference_M) {
    AmalgamationResult res;
    std::vector<ScalarSplit> splits;
    for (int comp = 0; comp < dimension; ++comp) {
        ScalarField c = [&, comp](cplx z) {
            return f(z)[std::size_t(comp)] - g(z)[std::size_t(comp)];
        };
        splits.push_back(cousin_split(c, decomp, -1.0));
        res.norm_c = std::max(res.norm_c, splits.back().norm_c);
    }

    // F = f - a on A, = g - b on B; the two agree on C by construction.
    auto F = [&](cplx z) {
        auto v = CVec(std::size_t(dimension));
        if (decomp.in_A(z) && (!decomp.in_B(z) || decomp.chi(z) < 0.5)) {
            CVec fv = f(z);
            for (int i = 0; i < dimension; ++i)
                v[std::size_t(i)] = fv[std::size_t(i)] - splits[std::size_t(i)].a(z);
        } else {
            CVec gv = g(z);
            for (int i = 0; i < dimension; ++i)
                v[std::size_t(i)] = gv[std::size_t(i)] - splits[std::size_t(i)].b(z);
        }
        return v;
    };

    for (cplx z : decomp.probes_A) {
        CVec d = F(z) - f(z);
        res.deviation_A = std::max(res.deviation_A, norm2(d));
    }
    for (cplx z : decomp.probes_B) {
        CVec d = F(z) - g(z);
        res.deviation_B = std::max(res.deviation_B, norm2(d));
    }
    double denom = std::max(res.norm_c, 1e-300);
    res.empirical_M = std::max(res.deviation_A, res.deviation_B) / denom;

    // refit as a global holomorphic map from boundary values
    std::size_t count = 256;
    while (count < 8 * std::size_t(fit_degree + 1)) count *= 2;
    BoundarySamples s;
    s.count = count;
    s.domain_kind = DomainKind::Disc;
    for (std::size_t m = 0; m < count; ++m) {
        cplx z = std::polar(1.0, 2.0 * kPi * double(m) / double(count));
        s.values.push_back(F(z));
    }
    FitResult fit = fit_from_boundary(s, fit_degree);
    res.glued = fit.map;
    res.fit_residual = fit.residual;

    const double M = reference_M > 0.0 ? reference_M : res.empirical_M;
    res.report.add("glue_bound_A", bound_slack * M * res.norm_c - res.deviation_A + 1e-15,
                   "dev_A=" + std::to_string(res.deviation_A));
    res.report.add("glue_bound_B", bound_slack * M * res.norm_c - res.deviation_B + 1e-15,
                   "dev_B=" + std::to_string(res.deviation_B));
    if (reference_M > 0.0 &&
        std::max(res.deviation_A, res.deviation_B) > bound_slack * reference_M * res.norm_c)
        throw Error("bound-violated");
    return res;
}

MStats measure_M(const CartanDecomposition& decomp, int trials, std::uint64_t seed) {
    Rng rng(seed);
    MStats st;
    st.min_ratio = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        std::vector<cplx> coef(std::size_t(2 + int(rng.next_u64() % 5)));
        for (cplx& c : coef) c = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        ScalarField c = [coef](cplx z) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = coef.size(); k-- > 0;) acc = acc * z + coef[k];
            return acc;
        };
        ScalarSplit s = cousin_split(c, decomp, -1.0);
        double ratio = s.norm_a / std::max(s.norm_c, 1e-300);
        st.min_ratio = std::min(st.min_ratio, ratio);
        st.max_ratio = std::max(st.max_ratio, ratio);
    }
    return st;
}

}  // namespace discurve
