#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "discurve/induced_metric.hpp"
#include "doctest.h"

using namespace discurve;

namespace {

ParamCurve radial_curve(double r0, double r1, int n = 65) {
    ParamCurve c;
    for (int i = 0; i < n; ++i)
        c.samples.push_back(cplx{r0 + (r1 - r0) * double(i) / double(n - 1), 0.0});
    return c;
}

AnalyticMap map_half_square() {
    // (z, z^2/2)
    return make_map({{cplx{0, 0}, cplx{1, 0}}, {cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}}});
}

// one-dimensional Simpson quadrature oracle for int_0^1 sqrt(1+t^2) dt
double radial_length_oracle() {
    const int n = 4096;
    double h = 1.0 / n, s = 0.0;
    auto f = [](double t) { return std::sqrt(1.0 + t * t); };
    for (int i = 0; i < n; ++i) {
        double a = i * h, b = a + h;
        s += (h / 6.0) * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return s;
}

}  // namespace

TEST_CASE("image_length: euclidean radius") {
    CHECK(image_length(make_scaled_identity(1.0), radial_curve(0.0, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("image_length: radial curve under (z, z^2/2)") {
    double want = radial_length_oracle();
    CHECK(want == doctest::Approx(1.1477935).epsilon(1e-6));
    CHECK(image_length(map_half_square(), radial_curve(0.0, 1.0)) ==
          doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("image_length: boundary circle of (z, z^N) vs polyline oracle") {
    const int N = 6;
    std::vector<std::vector<cplx>> c(2);
    c[0] = {cplx{0, 0}, cplx{1, 0}};
    c[1].assign(N + 1, cplx{0, 0});
    c[1][N] = cplx{1, 0};
    auto m = make_map(std::move(c));

    ParamCurve circle;
    circle.closed = true;
    const int K = 2048;
    for (int i = 0; i < K; ++i) circle.samples.push_back(std::polar(1.0, 2.0 * kPi * i / K));

    double polyline = 0.0;
    const int M = 1 << 16;
    CVec prev = evaluate(m, cplx{1.0, 0.0});
    for (int i = 1; i <= M; ++i) {
        CVec cur = evaluate(m, std::polar(1.0, 2.0 * kPi * i / M));
        polyline += norm2(cur - prev);
        prev = cur;
    }
    double want = 2.0 * kPi * std::sqrt(1.0 + double(N) * double(N));
    CHECK(polyline == doctest::Approx(want).epsilon(1e-6));
    CHECK(image_length(m, circle) == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("boundary_distance: euclidean disc") {
    auto br = boundary_distance(make_scaled_identity(1.0), cplx{0, 0}, 1.0, 1e-3, 48, 128, 2);
    CHECK(br.upper == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(br.lower <= 1.0 + 1e-12);
    CHECK(br.lower > 0.85);
}

TEST_CASE("boundary_distance: (z, z^2/2) radial minimizer") {
    double want = radial_length_oracle();
    auto br = boundary_distance(map_half_square(), cplx{0, 0}, 1.0, 1e-3, 48, 128, 2);
    CHECK(br.upper >= want - 1e-6);
    CHECK(br.upper == doctest::Approx(want).epsilon(5e-3));
    CHECK(br.lower <= want + 1e-9);
}

TEST_CASE("boundary_distance: linear scaling") {
    for (double scale : {0.5, 2.0}) {
        auto b1 = boundary_distance(make_scaled_identity(1.0), cplx{0, 0}, 1.0, 1e-3, 32, 64, 1);
        auto b2 =
            boundary_distance(make_scaled_identity(scale), cplx{0, 0}, 1.0, 1e-3, 32, 64, 1);
        CHECK(b2.upper == doctest::Approx(scale * b1.upper).epsilon(1e-9));
        CHECK(b2.lower == doctest::Approx(scale * b1.lower).epsilon(1e-9));
    }
}

TEST_CASE("boundary_distance: brackets and refinement") {
    auto m = map_half_square();
    // bracket validity: lower <= upper, lower >= min|df| * euclidean distance
    auto br = boundary_distance(m, cplx{0, 0}, 1.0, 1e-3, 32, 128, 1);
    CHECK(br.lower <= br.upper);
    CHECK(br.lower >= 1.0 * 1.0 * 0.80);  // min factor 1, distance 1, snapping overhead < 25%

    // upper estimates improve (nearly monotonically) under subdivision
    auto coarse = boundary_distance(m, cplx{0, 0}, 1.0, 1e-9, 24, 64, 1);
    auto fine = boundary_distance(m, cplx{0, 0}, 1.0, 1e-9, 48, 128, 1);
    CHECK(fine.upper <= coarse.upper * (1.0 + 5e-3));

    // distance brackets to an interior circle
    auto part = boundary_distance(m, cplx{0, 0}, 0.5, 1e-3, 32, 128, 1);
    CHECK(part.upper < br.upper);
}

TEST_CASE("boundary_distance: immersion required") {
    auto crit = make_map({{cplx{0, 0}, cplx{0, 0}, cplx{1, 0}}, {cplx{0, 0}}});
    CHECK_THROWS_WITH_AS(boundary_distance(crit, cplx{0.1, 0}, 1.0, 1e-3, 16, 64, 1),
                         doctest::Contains("not-an-immersion"), Error);
    CHECK_THROWS_WITH_AS(boundary_distance(map_half_square(), cplx{2, 0}, 1.0),
                         doctest::Contains("point-outside-domain"), Error);
}

TEST_CASE("metric field basics") {
    PolarMesh mesh{16, 64, 0.0, 1.0};
    auto f = build_metric_field(map_half_square(), mesh);
    CHECK(f.min_factor == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f.max_factor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    auto dist = distance_field(f, cplx{0, 0});
    CHECK(dist[mesh.index(0, 0)] == doctest::Approx(0.0));
}

TEST_CASE("completeness certificate rows") {
    // single trivial row
    Report r1 = completeness_certificate({{0, 0.5, 0.6, 0.8}});
    CHECK(r1.items.size() == 1);
    CHECK(r1.items[0].pass);

    // synthetic pass: measured equals rho_n
    Report r2 = completeness_certificate({{1, 1.0, 1.1, 1.0}, {2, 1.4, 1.5, 1.4}});
    CHECK(r2.all_pass());

    // designed failure: measured = rho_n / 4
    Report r3 = completeness_certificate({{1, 0.25, 0.3, 1.0}});
    CHECK_FALSE(r3.all_pass());

    CHECK_THROWS_AS(completeness_certificate({}), Error);
}
