#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "discurve/ball_geometry.hpp"
#include "doctest.h"

using namespace discurve;

namespace {

CVec rand_vec(Rng& rng, int n = 2, double scale = 1.0) {
    auto v = CVec(std::size_t(n));
    for (auto& c : v) c = scale * cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return v;
}

}  // namespace

TEST_CASE("pythagorean_radius") {
    CHECK(pythagorean_radius(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(pythagorean_radius(0.7, 1e-12) == doctest::Approx(0.7).epsilon(1e-12));
    // the radius update of the recursion at r = 0.8
    double c = std::sqrt(6.0 * (1.0 - 0.64)) / kPi;
    CHECK(pythagorean_radius(0.8, c) == doctest::Approx(0.9267425).epsilon(1e-6));
}

TEST_CASE("project_span basics") {
    Direction u(CVec{cplx{1, 0}, cplx{0, 0}});
    CVec v{cplx{3, 0}, cplx{0, 4}};
    CVec p = project_span(u, v);
    CHECK(std::abs(p[0] - cplx{3, 0}) < 1e-15);
    CHECK(std::abs(p[1]) < 1e-15);

    // vector orthogonal to u projects to zero
    CVec w{cplx{0, 0}, cplx{2, 1}};
    CHECK(norm2(project_span(u, w)) < 1e-15);

    CHECK_THROWS_AS(Direction(CVec{cplx{0, 0}, cplx{0, 0}}), Error);
}

TEST_CASE("project_span Pythagoras identity on random data") {
    Rng rng(123);
    for (int t = 0; t < 200; ++t) {
        CVec u = rand_vec(rng), v = rand_vec(rng);
        if (norm2(u) < 1e-3) continue;
        Direction du(u);
        CVec p = project_span(du, v);
        double lhs = norm2sq(v);
        double rhs = norm2sq(p) + norm2sq(v - p);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("project_span idempotent and norm-nonincreasing") {
    Rng rng(321);
    for (int t = 0; t < 100; ++t) {
        CVec u = rand_vec(rng), v = rand_vec(rng);
        if (norm2(u) < 1e-3) continue;
        Direction du(u);
        CVec p = project_span(du, v);
        CVec pp = project_span(du, p);
        CHECK(norm2(pp - p) < 1e-12);
        CHECK(norm2(p) <= norm2(v) + 1e-12);
    }
}

TEST_CASE("line_avoids_ball") {
    Direction u(CVec{cplx{1, 0}, cplx{0, 0}});
    CHECK(line_avoids_ball(CVec{cplx{2, 0}, cplx{0, 0}}, u, 1.0));
    CHECK_FALSE(line_avoids_ball(CVec{cplx{0.5, 0}, cplx{0, 0}}, u, 1.0));

    // cross-check against sampled minimization over the affine line
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        CVec base = rand_vec(rng, 2, 1.5);
        CVec dir = rand_vec(rng);
        if (norm2(dir) < 1e-3) continue;
        Direction du(dir);
        double dist = line_distance_from_origin(base, du);
        // orthonormal spanning vector of <dir>^perp in C^2
        CVec e{-std::conj(dir[1]), std::conj(dir[0])};
        e = cplx{1.0 / norm2(e), 0} * e;
        double best = norm2(base);
        for (int k = 0; k < 10000; ++k) {
            cplx tpar = cplx{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            best = std::min(best, norm2(base + tpar * e));
        }
        CHECK(dist <= best + 1e-9);
        CHECK(best <= dist + 0.05);  // sampled minimum approaches the true distance
    }
}

TEST_CASE("line_avoids_ball invariant under complex scaling of the direction") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        CVec base = rand_vec(rng, 2, 1.5);
        CVec dir = rand_vec(rng);
        if (norm2(dir) < 1e-3) continue;
        cplx s = cplx{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (std::abs(s) < 1e-3) continue;
        double m1 = line_avoids_ball_margin(base, Direction(dir), 0.7);
        double m2 = line_avoids_ball_margin(base, Direction(s * dir), 0.7);
        CHECK(std::abs(m1 - m2) < 1e-10);
    }
}

TEST_CASE("orthocap_separation closed-form slice example") {
    Shell shell(5.0, 0.1);
    CVec v{cplx{3, 0}, cplx{0, 0}};
    Direction u(CVec{cplx{1, 0}, cplx{0, 0}});
    double d = orthocap_separation(v, v, u, shell);
    CHECK(d == doctest::Approx(std::sqrt(4.9 * 4.9 - 9.0)).epsilon(1e-12));  // 3.8743...
}

TEST_CASE("orthocap_separation vs dense slice sampling") {
    Shell shell(1.2, 0.15);
    Rng rng(1234);
    for (int t = 0; t < 10; ++t) {
        CVec w = rand_vec(rng, 2, 0.5);
        CVec v = rand_vec(rng, 2, 0.5);
        CVec dir = rand_vec(rng);
        if (norm2(dir) < 1e-2) continue;
        Direction u(dir);
        double d;
        try {
            d = orthocap_separation(v, w, u, shell);
        } catch (const Error&) {
            continue;
        }
        CVec e{-std::conj(dir[1]), std::conj(dir[0])};
        e = cplx{1.0 / norm2(e), 0} * e;
        double best = 1e300;
        for (int k = 0; k < 20000; ++k) {
            cplx tpar = cplx{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            CVec x = w + tpar * e;
            double r = norm2(x);
            if (r <= shell.inner() || r >= shell.radius) continue;
            best = std::min(best, norm2(x - v));
        }
        if (best > 1e200) continue;
        CHECK(d <= best + 1e-9);
        CHECK(best <= d + 0.05);
    }
}

TEST_CASE("orthocap_separation monotone for far points") {
    Shell shell(1.0, 0.2);
    Direction u(CVec{cplx{1, 0}, cplx{0, 0}});
    CVec w{cplx{0.5, 0}, cplx{0, 0}};
    double prev = 0.0;
    for (double a = 3.0; a < 10.0; a += 1.0) {
        CVec v{cplx{a, 0}, cplx{0, 0}};
        double d = orthocap_separation(v, w, u, shell);
        CHECK(d > shell.radius);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("orthocap empty intersection flagged") {
    Shell shell(1.0, 0.2);
    Direction u(CVec{cplx{1, 0}, cplx{0, 0}});
    CVec w{cplx{2.0, 0}, cplx{0, 0}};  // line offset 2 > shell radius 1
    CHECK_THROWS_WITH_AS(orthocap_separation(w, w, u, shell),
                         doctest::Contains("empty-intersection"), Error);
}

TEST_CASE("invariant: sphere Pythagoras distance equals delta") {
    // for |u| = s and s_hat = sqrt(s^2 + delta^2):
    // dist(u, sphere(s_hat) ∩ (u + <u>^perp)) = delta exactly
    Rng rng(777);
    const double s = 0.8, delta = 0.47;
    const double s_hat = pythagorean_radius(s, delta);
    // realize the sphere trace as the inner face of a degenerate-width shell
    for (int t = 0; t < 100; ++t) {
        CVec u = rand_vec(rng);
        if (norm2(u) < 1e-2) continue;
        u = cplx{s / norm2(u), 0} * u;
        Direction du(u);
        Shell shell(s_hat + 1e-9, 1e-9);
        double d = orthocap_separation(u, u, du, shell);
        CHECK(std::abs(d - delta) < 1e-6);
        // the exact identity, via the slice radii directly
        double rho1 = std::sqrt(s_hat * s_hat - s * s);
        CHECK(std::abs(rho1 - delta) < 1e-12);
    }
}

TEST_CASE("shell membership margins") {
    Shell sh(1.0, 0.25);
    CHECK(sh.contains(CVec{cplx{0.9, 0}, cplx{0, 0}}));
    CHECK_FALSE(sh.contains(CVec{cplx{0.7, 0}, cplx{0, 0}}));
    CHECK_FALSE(sh.contains(CVec{cplx{1.1, 0}, cplx{0, 0}}));
    CHECK(sh.margin(CVec{cplx{0.875, 0}, cplx{0, 0}}) == doctest::Approx(0.125));
    CHECK_THROWS_AS(Shell(1.0, 1.5), Error);
}
