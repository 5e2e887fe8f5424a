#include "discurve/riemann_hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discurve/fft.hpp"

namespace discurve {

namespace {

cplx cayley(cplx s) { return (s - cplx{0, 1}) / (s + cplx{0, 1}); }
cplx inv_cayley(cplx zeta) {
    return cplx{0, 1} * (cplx{1, 0} + zeta) / (cplx{1, 0} - zeta);
}

// sqrt with the branch continuous from the closed upper half plane (the
// Cayley preimage of the disc); roundoff can put boundary points at -0 imag
cplx sqrt_uhp(cplx s) {
    if (s.imag() <= 0.0) s = cplx{s.real(), 0.0};  // also normalizes -0.0
    return std::sqrt(s);
}

}  // namespace

LensDisc make_lens(double theta_a, double theta_b) {
    if (!(theta_b > theta_a) || theta_b - theta_a >= 2.0 * kPi - 1e-9)
        throw Error("bad-lens-window");
    LensDisc L;
    L.theta_a = theta_a;
    L.theta_b = theta_b;
    L.corner_A = std::polar(1.0, theta_a);
    L.corner_B = std::polar(1.0, theta_b);
    const double half = 0.5 * (theta_b - theta_a);
    const double mid = 0.5 * (theta_a + theta_b);
    L.ortho_center = std::polar(1.0 / std::cos(half), mid);
    L.ortho_radius = std::tan(half);

    // align the wedge image of the outer arc with the positive real axis
    cplx z_arc = std::polar(1.0, mid);
    cplx w_arc = (z_arc - L.corner_A) / (z_arc - L.corner_B);
    L.rot_phase = std::arg(w_arc);
    // interior orientation: the wedge must open toward positive angles
    cplx z_in = std::polar(1.0 - 0.3 * L.depth(), mid);
    cplx w_in = std::polar(1.0, -L.rot_phase) * (z_in - L.corner_A) / (z_in - L.corner_B);
    L.flip = std::arg(w_in) < 0.0;
    return L;
}

LensDisc whole_disc_lens() {
    LensDisc L;
    L.whole_disc = true;
    L.theta_a = 0.0;
    L.theta_b = 2.0 * kPi;
    return L;
}

double LensDisc::depth() const {
    if (whole_disc) return 1.0;
    double half = 0.5 * (theta_b - theta_a);
    return 1.0 - (1.0 - std::sin(half)) / std::cos(half);
}

cplx LensDisc::to_disc(cplx z) const {
    if (whole_disc) return z;
    if (std::abs(z - corner_B) < 1e-14) return {1.0, 0.0};
    cplx w = std::polar(1.0, -rot_phase) * (z - corner_A) / (z - corner_B);
    if (flip) w = w * cplx{0, 1};  // rotate wedge [-pi/2,0] onto [0,pi/2]
    return cayley(w * w);
}

cplx LensDisc::from_disc(cplx zeta) const {
    if (whole_disc) return zeta;
    if (std::abs(zeta - cplx{1.0, 0.0}) < 1e-13) return corner_B;
    cplx s = inv_cayley(zeta);
    cplx w = sqrt_uhp(s);  // UHP -> first quadrant
    if (flip) w = w * cplx{0, -1};
    w = std::polar(1.0, rot_phase) * w;
    return (corner_A - corner_B * w) / (cplx{1, 0} - w);
}

cplx LensDisc::chart_deriv(cplx zeta) const {
    if (whole_disc) return {1.0, 0.0};
    cplx s = inv_cayley(zeta);
    cplx ds = cplx{0, 2} / ((cplx{1, 0} - zeta) * (cplx{1, 0} - zeta));
    cplx w0 = sqrt_uhp(s);
    cplx dw = 0.5 / w0 * ds;
    cplx w = w0;
    if (flip) {
        w *= cplx{0, -1};
        dw *= cplx{0, -1};
    }
    cplx rot = std::polar(1.0, rot_phase);
    w *= rot;
    dw *= rot;
    cplx dmu = (corner_A - corner_B) / ((cplx{1, 0} - w) * (cplx{1, 0} - w));
    return dmu * dw;
}

bool LensDisc::contains(cplx z, double tol) const {
    if (whole_disc) return std::abs(z) <= 1.0 + tol;
    return std::abs(z) <= 1.0 + tol && std::abs(z - ortho_center) <= ortho_radius + tol;
}

double LensDisc::boundary_tau(double theta) const {
    if (whole_disc) return wrap_angle(theta);
    cplx zeta = to_disc(std::polar(1.0, theta));
    return wrap_angle(std::arg(zeta));
}

double LensDisc::global_theta(double tau) const {
    if (whole_disc) return wrap_angle(tau);
    cplx z = from_disc(std::polar(1.0, tau));
    return wrap_angle(std::arg(z));
}

CVec BoundaryDiscFamily::center_at(double tau) const {
    return center(lens.from_disc(std::polar(1.0, tau)));
}

bool BoundaryDiscFamily::in_window(double tau) const {
    tau = wrap_angle(tau);
    if (win_lo <= win_hi) return tau >= win_lo && tau <= win_hi;
    return tau >= win_lo || tau <= win_hi;
}

namespace {

// Distance from x to the circle {c + rho e^{it} e} inside the affine e-line.
double dist_to_disc_boundary(const CVec& x, const CVec& c, double rho, const CVec& e) {
    CVec d = x - c;
    cplx de = inner(d, e);
    double along = std::abs(de);
    double off = norm2(d - de * e);
    return std::hypot(off, along - rho);
}

// Distance from x to the closed disc {c + s rho e : |s| <= 1}.
double dist_to_closed_disc(const CVec& x, const CVec& c, double rho, const CVec& e) {
    CVec d = x - c;
    cplx de = inner(d, e);
    double along = std::abs(de);
    double off = norm2(d - de * e);
    return std::hypot(off, std::max(0.0, along - rho));
}

struct OuterFunction {
    std::vector<cplx> coeff;  // analytic completion of the log-modulus

    cplx log_at(cplx zeta) const {
        cplx acc{0.0, 0.0};
        for (std::size_t k = coeff.size(); k-- > 0;) acc = acc * zeta + coeff[k];
        return acc;
    }
    cplx at(cplx zeta) const { return std::exp(log_at(zeta)); }
};

// Analytic function with |O| ~= profile on the unit circle (profile > 0),
// sampled at the half-offset angles 2*pi*(i+1/2)/M.
OuterFunction make_outer(const std::vector<double>& profile, int modes) {
    const std::size_t M = profile.size();
    std::vector<cplx> logs(M);
    for (std::size_t i = 0; i < M; ++i) logs[i] = cplx{std::log(profile[i]), 0.0};
    auto bins = circle_coefficients(std::move(logs));
    OuterFunction out;
    out.coeff.assign(std::size_t(modes) + 1, cplx{0, 0});
    out.coeff[0] = bins[0];
    for (int k = 1; k <= modes && k < int(M) / 2; ++k)
        out.coeff[std::size_t(k)] =
            2.0 * bins[std::size_t(k)] * std::polar(1.0, -double(k) * kPi / double(M));
    return out;
}

}  // namespace

RhSolution solve_rh(const BoundaryDiscFamily& family, double eps, double r,
                    const RhOptions& opt) {
    if (!(eps > 0.0) || !(r > 0.0) || !(r < 1.0)) throw Error("bad-rh-parameters");
    const int M = opt.boundary_nodes;
    const int n = family.dimension;

    auto taus = std::vector<double>(std::size_t(M));
    auto cvals = std::vector<CVec>(std::size_t(M));
    auto radii = std::vector<double>(std::size_t(M));
    for (int i = 0; i < M; ++i) {
        double tau = 2.0 * kPi * (double(i) + 0.5) / double(M);
        taus[std::size_t(i)] = tau;
        cvals[std::size_t(i)] = family.center_at(tau);
        radii[std::size_t(i)] = std::max(family.radius_at(tau), family.floor_value);
    }

    double scale = 1e-12;
    for (const auto& v : cvals) scale = std::max(scale, norm2(v));
    scale = std::max(scale, family.max_radius);
    BoundarySamples samples;
    samples.count = std::size_t(M);
    samples.domain_kind = DomainKind::Disc;
    samples.offset_half = true;
    samples.values = cvals;
    FitResult center_fit;
    int dc = 64;
    const double center_gate = std::max(opt.fit_tolerance * scale, eps / 50.0);
    for (;; dc *= 2) {
        center_fit = fit_from_boundary(samples, dc);
        if (center_fit.residual <= center_gate || 4 * dc >= M) break;
    }
    if (center_fit.residual > center_gate && 2 * M <= (1 << 15)) {
        RhOptions denser = opt;
        denser.boundary_nodes = 2 * M;
        return solve_rh(family, eps, r, denser);
    }

    OuterFunction outer = make_outer(radii, opt.log_modes);

    // plainness zone: outside the window widened by a guard band
    const double guard = 0.12 * 2.0 * kPi;
    auto off_window = [&](double tau) {
        double span = family.win_hi - family.win_lo;
        if (span < 0) span += 2.0 * kPi;
        if (span >= 2.0 * kPi - 1e-12) return false;
        double t = wrap_angle(tau) - family.win_lo;
        if (t < 0) t += 2.0 * kPi;
        return t > span + guard && t < 2.0 * kPi - guard;
    };

    RhSolution sol;
    sol.lens = family.lens;
    sol.center_fit_residual = center_fit.residual;

    auto near_corner = [&](double tau) {
        if (family.lens.whole_disc) return false;
        tau = wrap_angle(tau);
        return std::min(tau, 2.0 * kPi - tau) < opt.corner_guard ||
               std::abs(tau - kPi) < opt.corner_guard;
    };

    const int R = opt.radius_grid;
    for (int N = opt.n_start; N <= opt.n_cap; N *= 2) {
        auto hvals = std::vector<CVec>(std::size_t(M));
        for (int i = 0; i < M; ++i) {
            cplx zeta = std::polar(1.0, taus[std::size_t(i)]);
            cplx P = outer.at(zeta) * std::polar(1.0, double(N) * taus[std::size_t(i)]);
            CVec v = evaluate(center_fit.map, zeta);
            for (int c = 0; c < n; ++c) v[std::size_t(c)] += P * family.perp_dir[std::size_t(c)];
            hvals[std::size_t(i)] = std::move(v);
        }
        BoundarySamples hs;
        hs.count = std::size_t(M);
        hs.domain_kind = DomainKind::Disc;
        hs.offset_half = true;
        hs.values = hvals;
        int dh = std::min(M / 2 - 1, N + opt.log_modes + dc + 16);
        if (dh < N + opt.log_modes / 2) {
            RhOptions denser = opt;
            denser.boundary_nodes = 2 * M;
            denser.n_start = N;
            return solve_rh(family, eps, r, denser);
        }
        FitResult hfit = fit_from_boundary(hs, dh);
        if (hfit.residual > std::max(10.0 * opt.fit_tolerance * scale, 0.1 * eps))
            throw Error("fit-residual-too-large", std::to_string(hfit.residual));

        Report rep;
        double worst1 = 0.0;
        for (int i = 0; i < M; ++i) {
            if (near_corner(taus[std::size_t(i)])) continue;
            double d = dist_to_disc_boundary(hvals[std::size_t(i)], cvals[std::size_t(i)],
                                             radii[std::size_t(i)], family.perp_dir);
            worst1 = std::max(worst1, d + hfit.residual);
        }
        rep.add("rh_boundary_proximity", eps - worst1, "dist=" + std::to_string(worst1));

        // ring values via per-radius FFT synthesis (grids share the offset
        // angles taus): diff rings give |h - center| directly
        AnalyticMap diff_map = map_sub(hfit.map, center_fit.map);
        auto ring_values = [&](const AnalyticMap& m, double rho) {
            std::vector<std::vector<cplx>> per_comp;
            for (int c = 0; c < m.dimension(); ++c) {
                auto vals = circle_values_of(m, c, rho, std::size_t(M));
                per_comp.push_back(std::move(vals));
            }
            return per_comp;
        };
        // offset correction: circle_values_of samples standard angles; rotate
        // coefficients by the half-step phase once instead
        // (apply e^{i k pi / M} to coefficients -> values at offset angles)
        auto offset_map = [&](AnalyticMap m) {
            for (auto& comp : m.components)
                for (std::size_t k = 0; k < comp.size(); ++k)
                    comp[k] *= std::polar(1.0, double(k) * kPi / double(M));
            return m;
        };
        AnalyticMap h_off = offset_map(hfit.map);
        AnalyticMap diff_off = offset_map(diff_map);

        // scan ring grids on [r_lo, 1), zooming toward the boundary until a
        // passing suffix exists; r' is the smallest passing grid radius
        bool ring_ok = false;
        double r_prime = r, worst2 = 0.0;
        for (int zoom = 0; zoom < 4 && !ring_ok; ++zoom) {
            double r_lo = 1.0 - (1.0 - r) / std::pow(4.0, zoom);
            if (zoom > 0 && r_lo >= 1.0 - 1e-6) break;
            std::vector<double> ring_worst(std::size_t(R), 0.0);
            for (int k = 0; k < R; ++k) {
                double rho = r_lo + (double(k) / double(R)) * (1.0 - r_lo);
                auto hv = ring_values(h_off, rho);
                double w = 0.0;
                for (int i = 0; i < M; i += 2) {
                    if (near_corner(taus[std::size_t(i)])) continue;
                    auto x = CVec(std::size_t(n));
                    for (int c = 0; c < n; ++c)
                        x[std::size_t(c)] = hv[std::size_t(c)][std::size_t(i)];
                    w = std::max(w, dist_to_closed_disc(x, cvals[std::size_t(i)],
                                                        radii[std::size_t(i)], family.perp_dir));
                }
                ring_worst[std::size_t(k)] = w;
            }
            int k_ok = R;
            for (int k = R - 1; k >= 0; --k) {
                if (ring_worst[std::size_t(k)] < eps)
                    k_ok = k;
                else
                    break;
            }
            ring_ok = k_ok < R;
            r_prime = r_lo + (double(std::min(k_ok, R - 1)) / double(R)) * (1.0 - r_lo);
            worst2 = 0.0;
            for (int k = std::min(k_ok, R - 1); k < R; ++k)
                worst2 = std::max(worst2, ring_worst[std::size_t(k)]);
        }
        rep.add("rh_ring_proximity", ring_ok ? eps - worst2 : -worst2,
                "r_prime=" + std::to_string(r_prime));

        double worst3 = 0.0;
        for (double rho : {0.25 * r_prime, 0.6 * r_prime, 0.9 * r_prime, r_prime}) {
            auto dv = ring_values(diff_off, rho);
            for (int i = 0; i < M; i += 4) {
                double s2 = 0.0;
                for (int c = 0; c < n; ++c) s2 += std::norm(dv[std::size_t(c)][std::size_t(i)]);
                worst3 = std::max(worst3, std::sqrt(s2));
            }
        }
        worst3 += center_fit.residual;
        rep.add("rh_interior_closeness", eps - worst3, "dev=" + std::to_string(worst3));

        double worst4 = 0.0;
        for (double rho : {r_prime, 0.5 * (r_prime + 1.0), 1.0}) {
            auto dv = ring_values(diff_off, rho);
            for (int i = 0; i < M; ++i) {
                if (!off_window(taus[std::size_t(i)]) || near_corner(taus[std::size_t(i)]))
                    continue;
                double s2 = 0.0;
                for (int c = 0; c < n; ++c) s2 += std::norm(dv[std::size_t(c)][std::size_t(i)]);
                worst4 = std::max(worst4, std::sqrt(s2));
            }
        }
        rep.add("rh_off_window_closeness", eps - worst4, "dev=" + std::to_string(worst4));

        if (rep.all_pass()) {
            sol.h = hfit.map;
            sol.r_prime = r_prime;
            sol.winding = N;
            sol.bullets = rep;
            return sol;
        }
        if (2 * N > opt.n_cap) {
            sol.bullets = rep;
            break;
        }
    }
    std::string detail = "winding cap reached;";
    for (const auto& c : sol.bullets.items)
        detail += " " + c.id + "=" + std::to_string(c.margin);
    throw Error("no-N-found", detail);
}

double rh_ring_violation(const BoundaryDiscFamily& family, double eps, double r,
                         int winding, const RhOptions& opt) {
    const int M = opt.boundary_nodes;
    auto cvals = std::vector<CVec>(std::size_t(M));
    auto radii = std::vector<double>(std::size_t(M));
    for (int i = 0; i < M; ++i) {
        double tau = 2.0 * kPi * (double(i) + 0.5) / double(M);
        cvals[std::size_t(i)] = family.center_at(tau);
        radii[std::size_t(i)] = std::max(family.radius_at(tau), family.floor_value);
    }
    OuterFunction outer = make_outer(radii, opt.log_modes);
    double viol = 0.0;
    for (int k = 0; k < opt.radius_grid; ++k) {
        double rho = r + (double(k) / double(opt.radius_grid)) * (1.0 - r);
        for (int i = 0; i < M; i += 4) {
            double tau = 2.0 * kPi * (double(i) + 0.5) / double(M);
            cplx zeta = std::polar(rho, tau);
            cplx P = outer.at(zeta) * std::pow(zeta, winding);
            CVec hv = cvals[std::size_t(i)];
            for (int c = 0; c < family.dimension; ++c)
                hv[std::size_t(c)] += P * family.perp_dir[std::size_t(c)];
            double d = dist_to_closed_disc(hv, cvals[std::size_t(i)], radii[std::size_t(i)],
                                           family.perp_dir);
            viol = std::max(viol, std::max(0.0, d - eps));
        }
    }
    return viol;
}

CVec RhSolution::eval_global(cplx z) const { return evaluate(h, lens.to_disc(z)); }

BoundaryDiscFamily build_family_for_arc(const VectorFn& f0, int dimension,
                                        const LensDisc& lens, const Direction& direction,
                                        const Shell& shell_out, double win_lo_theta,
                                        double win_hi_theta, double taper,
                                        double floor_value) {
    if (dimension != 2) throw Error("unsupported-dimension", "disc families need n = 2");
    if (floor_value <= 0.0) throw Error("bad-floor");
    BoundaryDiscFamily fam;
    fam.lens = lens;
    fam.center = f0;
    fam.span_dir = direction.u;
    CVec u = normalized(direction.u);
    fam.perp_dir = CVec{-std::conj(u[1]), std::conj(u[0])};
    fam.dimension = dimension;
    fam.floor_value = floor_value;
    fam.win_lo = lens.boundary_tau(win_lo_theta);
    fam.win_hi = lens.boundary_tau(win_hi_theta);
    bool full_window = lens.whole_disc && win_hi_theta - win_lo_theta >= 2.0 * kPi - 1e-12;
    if (full_window) {
        fam.win_lo = 0.0;
        fam.win_hi = 2.0 * kPi - 1e-15;
    }
    const double mid = shell_out.radius - 0.5 * shell_out.width;
    const double mid_sq = mid * mid;

    const double wl = fam.win_lo, wh = fam.win_hi;
    auto window_weight = [wl, wh, taper, full_window](double tau) {
        if (full_window) return 1.0;
        tau = wrap_angle(tau);
        double span = wh - wl;
        if (span < 0) span += 2.0 * kPi;
        double t = tau - wl;
        if (t < 0) t += 2.0 * kPi;
        if (t < 0.0 || t > span) return 0.0;
        double edge = std::min(t, span - t);
        return smoothstep(edge / taper);
    };

    CVec e = fam.perp_dir;
    LensDisc L = lens;
    // geometric taper: interpolate radii in log scale so the outer-function
    // log-profile stays smooth across the window edges
    fam.radius_at = [f0, L, e, u, mid_sq, window_weight, floor_value](double tau) {
        double w = window_weight(tau);
        if (w <= 0.0) return floor_value;
        CVec v = f0(L.from_disc(std::polar(1.0, tau)));
        double a2 = std::norm(inner(v, u));
        double perp = std::abs(inner(v, e));
        double reach_sq = mid_sq - a2;
        if (reach_sq <= 0.0) return floor_value;
        double rad = std::sqrt(reach_sq) - perp;
        if (rad <= floor_value) return floor_value;
        return std::exp(std::log(floor_value) + w * (std::log(rad) - std::log(floor_value)));
    };

    bool reached = false;
    double win_span = wh - wl;
    if (win_span < 0) win_span += 2.0 * kPi;
    for (int i = 0; i <= 64; ++i) {
        double tau = wl + win_span * double(i) / 64.0;
        double rad = fam.radius_at(tau);
        fam.max_radius = std::max(fam.max_radius, rad);
        if (rad > 2.0 * floor_value && window_weight(tau) > 0.9) reached = true;
    }
    if (!reached) throw Error("unreachable-shell");
    return fam;
}

Report certify_f_conditions(const RhSolution& sol, const VectorFn& f0,
                            const Direction& direction, const Shell& shell,
                            double eps, double collar_lo_tau, double collar_hi_tau,
                            double collar_depth) {
    Report rep;
    const LensDisc& L = sol.lens;

    double m1 = std::numeric_limits<double>::infinity();
    const int M = 512;
    for (int i = 1; i < M; ++i) {
        double theta = L.theta_a + (L.theta_b - L.theta_a) * (double(i) + 0.5) / double(M);
        cplx zeta = std::polar(1.0, L.boundary_tau(theta));
        CVec hv = evaluate(sol.h, zeta);
        m1 = std::min(m1, shell.margin(hv));
    }
    rep.add("disc_boundary_in_shell", m1);

    auto in_collar = [&](double tau, double rho) {
        if (rho < 1.0 - collar_depth) return false;
        tau = wrap_angle(tau);
        if (collar_lo_tau <= collar_hi_tau)
            return tau >= collar_lo_tau && tau <= collar_hi_tau;
        return tau >= collar_lo_tau || tau <= collar_hi_tau;
    };
    double m2 = 0.0, m3 = 0.0;
    for (int ir = 0; ir <= 24; ++ir) {
        double rho = double(ir) / 24.0;
        for (int it = 0; it < 96; ++it) {
            double tau = 2.0 * kPi * (double(it) + 0.5) / 96.0;
            cplx zeta = std::polar(rho, tau);
            CVec hv = evaluate(sol.h, zeta);
            CVec fv = f0(L.from_disc(zeta));
            CVec diff = hv - fv;
            CVec proj = project_span(direction, diff);
            m2 = std::max(m2, norm2(proj));
            if (!in_collar(tau, rho)) m3 = std::max(m3, norm2(diff));
        }
    }
    rep.add("projection_closeness", eps - m2, "dev=" + std::to_string(m2));
    rep.add("off_collar_closeness", eps - m3, "dev=" + std::to_string(m3));
    return rep;
}

}  // namespace discurve
