#include "discurve/induced_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace discurve {

std::size_t PolarMesh::node_count() const {
    std::size_t rings = std::size_t(n_radial) + (has_center() ? 0 : 1);
    return rings * std::size_t(n_angular) + (has_center() ? 1 : 0);
}

std::size_t PolarMesh::index(int ir, int it) const {
    // ir = 0 is the center node (disc) or the inner circle (annulus)
    it = ((it % n_angular) + n_angular) % n_angular;
    if (has_center()) {
        if (ir == 0) return 0;
        return 1 + std::size_t(ir - 1) * std::size_t(n_angular) + std::size_t(it);
    }
    return std::size_t(ir) * std::size_t(n_angular) + std::size_t(it);
}

cplx PolarMesh::node(std::size_t idx) const {
    if (has_center()) {
        if (idx == 0) return {0.0, 0.0};
        idx -= 1;
        int ir = int(idx / std::size_t(n_angular)) + 1;
        int it = int(idx % std::size_t(n_angular));
        double r = inner + (outer - inner) * double(ir) / double(n_radial);
        return std::polar(r, 2.0 * kPi * double(it) / double(n_angular));
    }
    int ir = int(idx / std::size_t(n_angular));
    int it = int(idx % std::size_t(n_angular));
    double r = inner + (outer - inner) * double(ir) / double(n_radial);
    return std::polar(r, 2.0 * kPi * double(it) / double(n_angular));
}

MetricField build_metric_field(const AnalyticMap& map, const PolarMesh& mesh) {
    MetricField f;
    f.mesh = mesh;
    f.factor.assign(mesh.node_count(), 0.0);
    AnalyticMap d = derivative(map);
    const int first_ring = mesh.has_center() ? 1 : 0;
    if (mesh.has_center()) f.factor[0] = deriv_modulus(d, cplx{0.0, 0.0});
    std::size_t nt = std::size_t(mesh.n_angular);
    for (int ir = first_ring; ir <= mesh.n_radial; ++ir) {
        double r = mesh.inner + (mesh.outer - mesh.inner) * double(ir) / double(mesh.n_radial);
        if (r == 0.0) r = 1e-300;
        std::vector<double> accsq(nt, 0.0);
        for (int c = 0; c < d.dimension(); ++c) {
            auto vals = circle_values_of(d, c, r, nt);
            for (std::size_t k = 0; k < nt; ++k) accsq[k] += std::norm(vals[k]);
        }
        for (std::size_t k = 0; k < nt; ++k)
            f.factor[f.mesh.index(ir, int(k))] = std::sqrt(accsq[k]);
    }
    auto [lo, hi] = std::minmax_element(f.factor.begin(), f.factor.end());
    f.min_factor = *lo;
    f.max_factor = *hi;
    return f;
}

double image_length(const AnalyticMap& map, const ParamCurve& curve) {
    if (curve.samples.size() < 2) return 0.0;
    AnalyticMap d = derivative(map);
    std::vector<cplx> pts = curve.samples;
    if (curve.closed) pts.push_back(pts.front());

    auto segment_len = [&](cplx a, cplx b, int n) {
        double s = 0.0;
        cplx step = (b - a) / double(n);
        double h = std::abs(step);
        double prev = deriv_modulus(d, a);
        for (int k = 1; k <= n; ++k) {
            double cur = deriv_modulus(d, a + double(k) * step);
            s += 0.5 * (prev + cur) * h;
            prev = cur;
        }
        return s;
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        int n = 4;
        double prev = segment_len(pts[i], pts[i + 1], n);
        bool done = false;
        for (int round = 0; round < 18; ++round) {
            n *= 2;
            double cur = segment_len(pts[i], pts[i + 1], n);
            if (std::abs(cur - prev) <= 1e-6 * std::max(1e-30, std::abs(cur)) + 1e-14) {
                total += cur;
                done = true;
                break;
            }
            prev = cur;
        }
        if (!done) throw Error("refinement-cap", "image_length");
    }
    return total;
}

namespace {

struct Graph {
    const MetricField& f;
    double dr;

    // direction-snapping overhead for the cells adjacent to radius r
    double overhead(double r) const {
        double a = r * 2.0 * kPi / double(f.mesh.n_angular);  // angular side
        double phi = std::atan2(dr, std::max(a, 1e-12));
        double w1 = phi, w2 = 0.5 * kPi - phi;
        return std::max(1.0 / std::cos(0.5 * w1), 1.0 / std::cos(0.5 * w2));
    }
};

std::vector<double> dijkstra(const PolarMesh& mesh,
                             const std::vector<double>& factor, bool lower,
                             std::size_t source) {
    const double dr = (mesh.outer - mesh.inner) / double(mesh.n_radial);
    const std::size_t n = mesh.node_count();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});

    const int first_ring = mesh.has_center() ? 1 : 0;
    Graph g{MetricField{mesh, factor, 0, 0}, dr};

    auto ring_of = [&](std::size_t idx) -> int {
        if (mesh.has_center()) {
            if (idx == 0) return 0;
            return int((idx - 1) / std::size_t(mesh.n_angular)) + 1;
        }
        return int(idx / std::size_t(mesh.n_angular));
    };

    auto edge_weight = [&](std::size_t a, std::size_t b) {
        cplx za = mesh.node(a), zb = mesh.node(b);
        double len = std::abs(za - zb);
        double fa = factor[a], fb = factor[b];
        if (!lower) return 0.5 * (fa + fb) * len;
        double fmin = std::min(fa, fb);
        double r = 0.5 * (std::abs(za) + std::abs(zb));
        return fmin * len / g.overhead(std::max(r, dr));
    };

    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[u]) continue;
        int ir = ring_of(u);
        int it = 0;
        if (!(mesh.has_center() && u == 0)) {
            std::size_t base = mesh.has_center() ? u - 1 : u;
            it = int(base % std::size_t(mesh.n_angular));
        }
        auto relax = [&](std::size_t v) {
            double w = edge_weight(u, v);
            if (dist[u] + w < dist[v]) {
                dist[v] = dist[u] + w;
                pq.push({dist[v], v});
            }
        };
        if (mesh.has_center() && u == 0) {
            for (int t = 0; t < mesh.n_angular; ++t) relax(mesh.index(1, t));
            continue;
        }
        relax(mesh.index(ir, it + 1));
        relax(mesh.index(ir, it - 1));
        for (int dr_step : {-1, 1}) {
            int jr = ir + dr_step;
            if (jr > mesh.n_radial) continue;
            if (jr < first_ring) {
                if (mesh.has_center() && jr == 0) relax(0);
                continue;
            }
            if (mesh.has_center() && jr == 0) {
                relax(0);
                continue;
            }
            for (int dt : {-1, 0, 1}) relax(mesh.index(jr, it + dt));
        }
    }
    return dist;
}

double min_on_outer_ring(const PolarMesh& mesh, const std::vector<double>& dist) {
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < mesh.n_angular; ++t)
        best = std::min(best, dist[mesh.index(mesh.n_radial, t)]);
    return best;
}

}  // namespace

DistanceBracket boundary_distance(const AnalyticMap& map, cplx z0,
                                  double outer_radius, double rel_tol, int nr0,
                                  int nt0, int max_rounds) {
    if (std::abs(z0) >= outer_radius) throw Error("point-outside-domain", "z0");
    double inner = map.domain_kind == DomainKind::Annulus ? map.inner_radius : 0.0;

    DistanceBracket out;
    double prev_upper = -1.0;
    int nr = nr0, nt = nt0;
    for (int round = 0; round < max_rounds; ++round, nr *= 2, nt *= 2) {
        PolarMesh mesh{nr, nt, inner, outer_radius};
        MetricField field = build_metric_field(map, mesh);
        if (field.min_factor <= 0.0) throw Error("not-an-immersion");

        // snap z0 to the nearest node
        std::size_t src = 0;
        double best = std::numeric_limits<double>::infinity();
        if (std::abs(z0) < 1e-12 && mesh.has_center()) {
            src = 0;
            best = std::abs(z0);
        } else {
            double rr = std::abs(z0);
            int ir = int(std::lround((rr - inner) / (outer_radius - inner) * nr));
            ir = std::clamp(ir, mesh.has_center() ? 1 : 0, nr);
            int it = int(std::lround(wrap_angle(std::arg(z0)) / (2.0 * kPi) * nt));
            src = mesh.index(std::max(ir, 1), it);
            best = std::abs(mesh.node(src) - z0);
        }
        double snap = best * field.max_factor;

        auto up = dijkstra(mesh, field.factor, false, src);
        auto lo = dijkstra(mesh, field.factor, true, src);
        out.upper = min_on_outer_ring(mesh, up) + snap;
        out.lower = std::max(0.0, min_on_outer_ring(mesh, lo) - snap);
        out.n_radial = nr;
        out.n_angular = nt;
        if (prev_upper >= 0.0 &&
            std::abs(out.upper - prev_upper) <= rel_tol * std::max(1e-12, out.upper))
            return out;
        prev_upper = out.upper;
    }
    return out;  // best effort at cap; brackets remain valid
}

std::vector<double> distance_field(const MetricField& field, cplx z0) {
    const PolarMesh& mesh = field.mesh;
    std::size_t src = 0;
    if (!(std::abs(z0) < 1e-12 && mesh.has_center())) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < mesh.node_count(); ++i) {
            double d = std::abs(mesh.node(i) - z0);
            if (d < best) {
                best = d;
                src = i;
            }
        }
    }
    return dijkstra(mesh, field.factor, false, src);
}

Report completeness_certificate(const std::vector<CompletenessRow>& rows) {
    Report rep;
    if (rows.empty()) throw Error("empty-state-sequence");
    for (const auto& r : rows) {
        rep.add("completeness_n" + std::to_string(r.n),
                r.measured_lower - 0.5 * r.rho_n,
                "lower=" + std::to_string(r.measured_lower) +
                    " target=" + std::to_string(0.5 * r.rho_n));
    }
    return rep;
}

}  // namespace discurve
