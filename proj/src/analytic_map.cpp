#include "discurve/analytic_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discurve/fft.hpp"

namespace discurve {

namespace {

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

}  // namespace

bool AnalyticMap::in_domain(cplx z, double slack) const {
    double r = std::abs(z);
    if (domain_kind == DomainKind::Disc) return r <= 1.0 + slack;
    return r <= 1.0 + slack && r >= inner_radius - slack;
}

void AnalyticMap::validate() const {
    if (components.empty()) throw Error("empty-map");
    const std::size_t want = domain_kind == DomainKind::Disc
                                 ? std::size_t(degree) + 1
                                 : 2 * std::size_t(degree) + 1;
    for (const auto& c : components) {
        if (c.size() != want) throw Error("coefficient-shape-mismatch");
        for (const cplx& v : c)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error("non-finite-coefficient");
    }
    if (domain_kind == DomainKind::Annulus &&
        (inner_radius <= 0.0 || inner_radius >= 1.0))
        throw Error("bad-inner-radius");
}

AnalyticMap make_map(std::vector<std::vector<cplx>> coeffs) {
    AnalyticMap m;
    std::size_t len = 1;
    for (const auto& c : coeffs) len = std::max(len, c.size());
    for (auto& c : coeffs) c.resize(len, cplx{0.0, 0.0});
    m.components = std::move(coeffs);
    m.degree = int(len) - 1;
    m.validate();
    return m;
}

AnalyticMap make_annulus_map(std::vector<std::vector<cplx>> laurent, double inner_radius) {
    AnalyticMap m;
    std::size_t len = 1;
    for (const auto& c : laurent) len = std::max(len, c.size());
    if (len % 2 == 0) ++len;
    for (auto& c : laurent) c.resize(len, cplx{0.0, 0.0});
    m.components = std::move(laurent);
    m.domain_kind = DomainKind::Annulus;
    m.inner_radius = inner_radius;
    m.degree = (int(len) - 1) / 2;
    m.validate();
    return m;
}

AnalyticMap make_scaled_identity(double s, int n) {
    std::vector<std::vector<cplx>> c(std::size_t(n), std::vector<cplx>{{0.0, 0.0}, {0.0, 0.0}});
    c[0][1] = cplx{s, 0.0};
    return make_map(std::move(c));
}

void BoundarySamples::validate() const {
    if (count < 256 || !is_pow2(count)) throw Error("bad-sample-count");
    const std::size_t circles = domain_kind == DomainKind::Disc ? 1 : 2;
    if (values.size() != circles * count) throw Error("bad-sample-shape");
}

CVec evaluate(const AnalyticMap& map, cplx z) {
    if (!map.in_domain(z)) throw Error("point-outside-domain");
    CVec out(map.components.size());
    for (std::size_t i = 0; i < map.components.size(); ++i)
        out[i] = evaluate_component(map, int(i), z);
    return out;
}

cplx evaluate_component(const AnalyticMap& map, int comp, cplx z) {
    const auto& c = map.components[std::size_t(comp)];
    if (map.domain_kind == DomainKind::Disc) return horner(c, z);
    // Laurent: nonnegative powers by Horner in z, negative by Horner in 1/z.
    const int d = map.degree;
    std::vector<cplx> pos(c.begin() + d, c.end());
    cplx acc = horner(pos, z);
    cplx zi = cplx{1.0, 0.0} / z;
    cplx acc_neg{0.0, 0.0};
    for (int k = d; k >= 1; --k) acc_neg = (acc_neg + c[std::size_t(d - k)]) * zi;
    return acc + acc_neg;
}

AnalyticMap derivative(const AnalyticMap& map) {
    AnalyticMap d = map;
    if (map.domain_kind == DomainKind::Disc) {
        for (auto& c : d.components) {
            for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = double(k) * c[k];
            if (c.size() > 1)
                c.pop_back();
            else
                c[0] = cplx{0.0, 0.0};
        }
        d.degree = std::max(0, map.degree - 1);
    } else {
        // (z^m)' = m z^(m-1); the window widens by one on the negative side.
        const int deg = map.degree;
        const int dd = deg + 1;
        for (auto& c : d.components) {
            std::vector<cplx> out(2 * std::size_t(dd) + 1, cplx{0.0, 0.0});
            for (int k = 0; k < int(c.size()); ++k) {
                int m = k - deg;
                if (m == 0) continue;
                out[std::size_t((m - 1) + dd)] += double(m) * c[std::size_t(k)];
            }
            c = std::move(out);
        }
        d.degree = dd;
    }
    return d;
}

double deriv_modulus(const AnalyticMap& dmap, cplx z) {
    double s = 0.0;
    for (int i = 0; i < dmap.dimension(); ++i) s += std::norm(evaluate_component(dmap, i, z));
    return std::sqrt(s);
}

std::vector<cplx> circle_values_of(const AnalyticMap& map, int comp, double rho,
                                   std::size_t count) {
    if (!is_pow2(count)) throw Error("bad-sample-count");
    const auto& c = map.components[std::size_t(comp)];
    std::vector<cplx> bins(count, cplx{0.0, 0.0});
    const int d = map.degree;
    if (map.domain_kind == DomainKind::Disc) {
        double rk = 1.0;
        for (int k = 0; k <= d; ++k) {
            bins[std::size_t(k) % count] += c[std::size_t(k)] * rk;
            rk *= rho;
        }
    } else {
        for (int k = 0; k < int(c.size()); ++k) {
            int m = k - d;
            double rm = std::pow(rho, double(m));
            std::size_t bin = std::size_t((m % int(count) + int(count))) % count;
            bins[bin] += c[std::size_t(k)] * rm;
        }
    }
    return circle_values(std::move(bins));
}

namespace {

double grid_max_modulus(const AnalyticMap& map, double rho, std::size_t count) {
    std::vector<double> accsq(count, 0.0);
    for (int i = 0; i < map.dimension(); ++i) {
        auto vals = circle_values_of(map, i, rho, count);
        for (std::size_t k = 0; k < count; ++k) accsq[k] += std::norm(vals[k]);
    }
    double best = 0.0;
    for (double s : accsq) best = std::max(best, s);
    return std::sqrt(best);
}

}  // namespace

double sup_norm(const AnalyticMap& map, Region region) {
    // Holomorphy: the closed-domain sup equals the boundary sup, so both
    // regions reduce to the boundary circles.
    (void)region;
    std::vector<double> radii{1.0};
    if (map.domain_kind == DomainKind::Annulus) radii.push_back(map.inner_radius);
    double prev = -1.0;
    for (std::size_t count = 1024; count <= (1u << 21); count *= 2) {
        double cur = 0.0;
        for (double rho : radii) cur = std::max(cur, grid_max_modulus(map, rho, count));
        if (prev >= 0.0 && std::abs(cur - prev) <= 1e-6 * std::max(1e-300, cur)) return cur;
        prev = cur;
    }
    throw Error("non-convergent-refinement", "sup_norm grid cap reached");
}

double min_derivative_modulus(const AnalyticMap& map) {
    AnalyticMap d = derivative(map);
    const double r0 = map.domain_kind == DomainKind::Disc ? 0.0 : map.inner_radius;
    double prev = -1.0;
    for (std::size_t nt = 256; nt <= (1u << 14); nt *= 2) {
        const std::size_t nr = nt / 4;
        double cur = std::numeric_limits<double>::infinity();
        for (std::size_t ir = 0; ir <= nr; ++ir) {
            double rho = r0 + (1.0 - r0) * double(ir) / double(nr);
            if (rho == 0.0) {
                cur = std::min(cur, deriv_modulus(d, cplx{0.0, 0.0}));
                continue;
            }
            std::vector<double> accsq(nt, 0.0);
            for (int i = 0; i < d.dimension(); ++i) {
                auto vals = circle_values_of(d, i, rho, nt);
                for (std::size_t k = 0; k < nt; ++k) accsq[k] += std::norm(vals[k]);
            }
            for (double s : accsq) cur = std::min(cur, std::sqrt(s));
        }
        if (prev >= 0.0 && std::abs(cur - prev) <= 1e-4 * std::max(1e-12, cur)) {
            if (cur < 1e-9 * std::max(1.0, sup_norm(derivative(map))))
                throw Error("zero-derivative-detected");
            return cur;
        }
        prev = cur;
    }
    if (prev < 1e-9) throw Error("zero-derivative-detected");
    return prev;
}

FitResult fit_from_boundary(const BoundarySamples& samples, int degree,
                            double residual_tolerance) {
    samples.validate();
    const std::size_t count = samples.count;
    if (degree < 0 || std::size_t(degree) >= count / 2) throw Error("degree-too-large");
    const int n = int(samples.values[0].size());

    FitResult res;
    std::vector<std::vector<cplx>> coeffs;
    double energy_kept = 0.0, energy_total = 0.0;
    auto phase_fix = [&](int k) {
        // nodes shifted by half a step multiply bin k by e^{-i k pi/count}
        return samples.offset_half ? std::polar(1.0, -double(k) * kPi / double(count))
                                   : cplx{1.0, 0.0};
    };

    for (int comp = 0; comp < n; ++comp) {
        std::vector<cplx> f(count);
        for (std::size_t m = 0; m < count; ++m) f[m] = samples.values[m][std::size_t(comp)];
        auto bins = circle_coefficients(std::move(f));
        for (const cplx& b : bins) energy_total += std::norm(b);
        if (samples.domain_kind == DomainKind::Disc) {
            std::vector<cplx> c(std::size_t(degree) + 1);
            for (int k = 0; k <= degree; ++k) {
                c[std::size_t(k)] = bins[std::size_t(k)] * phase_fix(k);
                energy_kept += std::norm(bins[std::size_t(k)]);
            }
            coeffs.push_back(std::move(c));
        } else {
            std::vector<cplx> c(2 * std::size_t(degree) + 1);
            for (int m = -degree; m <= degree; ++m) {
                std::size_t bin = std::size_t((m % int(count) + int(count))) % count;
                c[std::size_t(m + degree)] = bins[bin] * phase_fix(m);
                energy_kept += std::norm(bins[bin]);
            }
            coeffs.push_back(std::move(c));
        }
    }

    if (samples.domain_kind == DomainKind::Disc)
        res.map = make_map(std::move(coeffs));
    else
        res.map = make_annulus_map(std::move(coeffs), samples.inner_radius);
    res.residual = std::sqrt(std::max(0.0, energy_total - energy_kept));

    if (samples.domain_kind == DomainKind::Annulus) {
        // Laurent fit read off the outer circle; report the worse of the two
        // circle residuals so inner-circle mismatch is not silent.
        double inner_rms = 0.0;
        for (std::size_t m = 0; m < count; ++m) {
            double theta = 2.0 * kPi * (double(m) + (samples.offset_half ? 0.5 : 0.0)) /
                           double(count);
            cplx z = std::polar(samples.inner_radius, theta);
            CVec v = evaluate(res.map, z);
            inner_rms += norm2sq(v - samples.values[count + m]);
        }
        res.residual = std::max(res.residual, std::sqrt(inner_rms / double(count)));
    }

    if (residual_tolerance >= 0.0 && res.residual > residual_tolerance)
        throw Error("ill-conditioned-fit",
                    "residual " + std::to_string(res.residual));
    return res;
}

BoundarySamples sample_boundary(const AnalyticMap& map, std::size_t count) {
    BoundarySamples s;
    s.count = count;
    s.domain_kind = map.domain_kind;
    s.inner_radius = map.inner_radius;
    std::vector<double> radii{1.0};
    if (map.domain_kind == DomainKind::Annulus) radii.push_back(map.inner_radius);
    for (double rho : radii) {
        std::vector<std::vector<cplx>> per_comp;
        for (int i = 0; i < map.dimension(); ++i)
            per_comp.push_back(circle_values_of(map, i, rho, count));
        for (std::size_t m = 0; m < count; ++m) {
            CVec v(per_comp.size());
            for (std::size_t i = 0; i < per_comp.size(); ++i) v[i] = per_comp[i][m];
            s.values.push_back(std::move(v));
        }
    }
    return s;
}

FitResult compose_mobius(const AnalyticMap& map, cplx a, double theta, int degree) {
    if (degree < 0) degree = std::max(64, map.degree);
    if (std::abs(a) >= 1.0) throw Error("bad-mobius-parameter");
    if (map.domain_kind != DomainKind::Disc)
        throw Error("unsupported-domain", "mobius composition needs the disc");
    std::size_t n = 256;
    while (n < 8 * std::size_t(degree + 1)) n *= 2;
    BoundarySamples s;
    s.count = n;
    s.domain_kind = DomainKind::Disc;
    const cplx rot = std::polar(1.0, theta);
    for (std::size_t m = 0; m < n; ++m) {
        cplx z = std::polar(1.0, 2.0 * kPi * double(m) / double(n));
        cplx w = rot * (z - a) / (cplx{1.0, 0.0} - std::conj(a) * z);
        if (std::abs(w) > 1.0) w /= std::abs(w);
        s.values.push_back(evaluate(map, w));
    }
    return fit_from_boundary(s, degree);
}

AnalyticMap map_sub(const AnalyticMap& a, const AnalyticMap& b) {
    if (a.domain_kind != b.domain_kind || a.dimension() != b.dimension())
        throw Error("map-shape-mismatch");
    const int deg = std::max(a.degree, b.degree);
    AnalyticMap out;
    out.domain_kind = a.domain_kind;
    out.inner_radius = a.inner_radius;
    out.degree = deg;
    const bool disc = a.domain_kind == DomainKind::Disc;
    const std::size_t len = disc ? std::size_t(deg) + 1 : 2 * std::size_t(deg) + 1;
    auto offset = [&](const AnalyticMap& m) {
        return disc ? 0 : deg - m.degree;
    };
    for (int i = 0; i < a.dimension(); ++i) {
        std::vector<cplx> c(len, cplx{0.0, 0.0});
        const auto& ca = a.components[std::size_t(i)];
        const auto& cb = b.components[std::size_t(i)];
        for (std::size_t k = 0; k < ca.size(); ++k) c[k + std::size_t(offset(a))] += ca[k];
        for (std::size_t k = 0; k < cb.size(); ++k) c[k + std::size_t(offset(b))] -= cb[k];
        out.components.push_back(std::move(c));
    }
    return out;
}

AnalyticMap map_scale(const AnalyticMap& a, cplx s) {
    AnalyticMap out = a;
    for (auto& c : out.components)
        for (auto& v : c) v *= s;
    return out;
}

}  // namespace discurve
