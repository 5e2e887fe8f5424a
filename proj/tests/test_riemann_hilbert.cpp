#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "discurve/riemann_hilbert.hpp"
#include "doctest.h"

using namespace discurve;

namespace {

VectorFn scaled_identity_fn(double s) {
    return [s](cplx z) { return CVec{s * z, cplx{0, 0}}; };
}

BoundaryDiscFamily model_family(double radius, double floor_value) {
    BoundaryDiscFamily fam;
    fam.lens = whole_disc_lens();
    fam.center = scaled_identity_fn(1.0);
    fam.span_dir = CVec{cplx{1, 0}, cplx{0, 0}};
    fam.perp_dir = CVec{cplx{0, 0}, cplx{1, 0}};
    fam.radius_at = [radius, floor_value](double) { return std::max(radius, floor_value); };
    fam.max_radius = radius;
    fam.floor_value = floor_value;
    fam.win_lo = 0.0;
    fam.win_hi = 2.0 * kPi - 1e-15;
    fam.dimension = 2;
    return fam;
}

}  // namespace

TEST_CASE("lens chart: round trip, boundary, derivative") {
    LensDisc L = make_lens(0.3, 1.1);
    CHECK(L.depth() > 0.05);
    CHECK(L.depth() < 0.5);

    Rng rng(4);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 60; ++t) {
        cplx z = std::polar(rng.uniform(0.7, 0.999), rng.uniform(0.35, 1.05));
        if (!L.contains(z)) continue;
        cplx zeta = L.to_disc(z);
        CHECK(std::abs(zeta) < 1.0 + 1e-9);
        cplx back = L.from_disc(zeta);
        CHECK(std::abs(back - z) < 1e-9);
        ++checked;
    }
    CHECK(checked >= 40);

    for (int i = 1; i < 32; ++i) {
        double theta = 0.3 + 0.8 * double(i) / 32.0;
        cplx zeta = L.to_disc(std::polar(1.0, theta));
        CHECK(std::abs(std::abs(zeta) - 1.0) < 1e-9);
        CHECK(std::abs(L.global_theta(L.boundary_tau(theta)) - theta) < 1e-9);
    }

    for (int t = 0; t < 20; ++t) {
        cplx zeta = std::polar(rng.uniform(0.1, 0.9), rng.uniform(0.0, 2.0 * kPi));
        const double h = 1e-6;
        cplx fd = (L.from_disc(zeta + h) - L.from_disc(zeta - h)) / (2.0 * h);
        CHECK(std::abs(fd - L.chart_deriv(zeta)) < 1e-5 * std::max(1.0, std::abs(fd)));
    }

    CHECK(std::abs(L.to_disc(std::polar(1.0, 0.3 + 1e-9)) - cplx{-1, 0}) < 1e-3);
}

TEST_CASE("model family: exact solution (zeta, zeta^N)") {
    auto fam = model_family(1.0, 1.0);  // constant profile: outer function is 1
    RhSolution sol = solve_rh(fam, 1e-2, 0.5);
    CHECK(sol.bullets.all_pass());
    CHECK(sol.bullets.margin_of("rh_boundary_proximity") > 1e-2 - 1e-10);
    cplx z{0.37, 0.21};
    CVec v = evaluate(sol.h, z);
    CHECK(std::abs(v[0] - z) < 1e-10);
    CHECK(std::abs(v[1] - std::pow(z, sol.winding)) < 1e-10);
}

TEST_CASE("constant family returns the center map") {
    BoundaryDiscFamily fam;
    fam.lens = whole_disc_lens();
    fam.center = [](cplx z) { return CVec{0.7 * z, 0.1 * z * z}; };
    fam.span_dir = CVec{cplx{1, 0}, cplx{0, 0}};
    fam.perp_dir = CVec{cplx{0, 0}, cplx{1, 0}};
    fam.radius_at = [](double) { return 1e-9; };
    fam.max_radius = 0.0;
    fam.floor_value = 1e-9;
    fam.win_lo = 0.0;
    fam.win_hi = 2.0 * kPi - 1e-15;
    fam.dimension = 2;

    RhSolution sol = solve_rh(fam, 1e-2, 0.5);
    CHECK(sol.bullets.all_pass());
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        cplx z = rng.unit_disc_point();
        CVec v = evaluate(sol.h, z);
        CHECK(std::abs(v[0] - 0.7 * z) < 1e-6);
        CHECK(std::abs(v[1] - 0.1 * z * z) < 1e-6);
    }
}

TEST_CASE("scaled family on a half-circle arc") {
    BoundaryDiscFamily fam;
    fam.lens = whole_disc_lens();
    fam.center = scaled_identity_fn(1.0);
    fam.span_dir = CVec{cplx{1, 0}, cplx{0, 0}};
    fam.perp_dir = CVec{cplx{0, 0}, cplx{1, 0}};
    fam.win_lo = 0.0;
    fam.win_hi = kPi;
    fam.floor_value = 1e-4;
    const double taper = 0.35;
    fam.radius_at = [taper](double tau) {
        tau = wrap_angle(tau);
        if (tau > kPi) return 1e-4;
        double edge = std::min(tau, kPi - tau);
        return std::max(0.3 * smoothstep(edge / taper), 1e-4);
    };
    fam.max_radius = 0.3;
    fam.dimension = 2;

    RhSolution sol = solve_rh(fam, 1e-2, 0.5);
    CHECK(sol.bullets.all_pass());
    CHECK(sol.r_prime >= 0.5);
    CHECK(sol.r_prime < 1.0);

    CVec v = evaluate(sol.h, std::polar(1.0, 1.5 * kPi));
    CHECK(std::abs(v[0] - std::polar(1.0, 1.5 * kPi)) < 2e-2);
    CHECK(std::abs(v[1]) < 2e-2);
}

TEST_CASE("invariant: ring violation non-increasing in the winding degree") {
    auto fam = model_family(1.0, 1.0);
    double prev = -1.0;
    for (int N : {8, 16, 32, 64, 128}) {
        double v = rh_ring_violation(fam, 1e-2, 0.7, N);
        if (prev >= 0.0) CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("build_family_for_arc: shell-reaching radius profile") {
    LensDisc lens = make_lens(0.4, 1.0);
    Shell shell(1.0, 0.1);
    Direction dir(CVec{cplx{1, 0}, cplx{0, 0}});
    VectorFn f0 = scaled_identity_fn(0.6);
    auto fam = build_family_for_arc(f0, 2, lens, dir, shell, 0.55, 0.85, 0.25);

    // mid-window: |f0|^2 + radius^2 = (mid-shell)^2
    double tau_mid = lens.boundary_tau(0.7);
    double rad = fam.radius_at(tau_mid);
    CVec p = f0(std::polar(1.0, 0.7));
    double want = std::sqrt(0.95 * 0.95 - norm2sq(p));
    CHECK(rad == doctest::Approx(want).epsilon(1e-3));

    // outside the window: constant discs
    double tau_off = lens.boundary_tau(0.45);
    CHECK(fam.radius_at(tau_off) == doctest::Approx(fam.floor_value));

    // designed failures
    CHECK_THROWS_AS(Direction(CVec{cplx{0, 0}, cplx{0, 0}}), Error);
    // shell strictly inside the projection radius: nothing to reach
    Shell tiny_shell(0.3, 0.1);
    CHECK_THROWS_WITH_AS(
        build_family_for_arc(f0, 2, lens, dir, tiny_shell, 0.55, 0.85, 0.25),
        doctest::Contains("unreachable-shell"), Error);
}

TEST_CASE("certify_f_conditions on a lens solve") {
    LensDisc lens = make_lens(0.4, 1.0);
    Shell shell(1.0, 0.12);
    Direction dir(CVec{cplx{1, 0}, cplx{0, 0}});
    VectorFn f0 = scaled_identity_fn(0.6);
    auto fam = build_family_for_arc(f0, 2, lens, dir, shell, 0.55, 0.85, 0.8, 5e-4);
    RhSolution sol = solve_rh(fam, 5e-3, 0.4);
    CHECK(sol.bullets.all_pass());

    double c_lo = std::min(fam.win_lo, fam.win_hi) - 0.3;
    double c_hi = std::max(fam.win_lo, fam.win_hi) + 0.3;
    Report rep = certify_f_conditions(sol, f0, dir, shell, 5e-2, c_lo, c_hi, 0.5);
    // plainness and projection-closeness hold; full shell membership cannot
    // (the trace is only pushed out across the window)
    CHECK(rep.find("projection_closeness")->pass);
    CHECK(rep.find("off_collar_closeness")->pass);
    CHECK_FALSE(rep.find("disc_boundary_in_shell")->pass);
}

TEST_CASE("synthetic projection violation is flagged") {
    Direction dir(CVec{cplx{1, 0}, cplx{0, 0}});
    Shell shell(1.0, 0.12);

    RhSolution fake;
    fake.lens = whole_disc_lens();
    // large deformation along the preserved direction
    fake.h = make_map({{cplx{0.05, 0}, cplx{0.6, 0}}, {cplx{0, 0}}});
    VectorFn f0 = scaled_identity_fn(0.6);
    Report rep = certify_f_conditions(fake, f0, dir, shell, 1e-3, 0.0, 0.1, 0.1);
    CHECK_FALSE(rep.find("projection_closeness")->pass);
}
