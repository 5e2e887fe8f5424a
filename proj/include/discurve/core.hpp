#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace discurve {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Point or direction in C^n, n in {2,3}.
using CVec = std::vector<cplx>;

// Hermitian inner product <u,v> = sum u_i * conj(v_i).
inline cplx inner(const CVec& u, const CVec& v) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

inline double norm2sq(const CVec& u) {
    double s = 0.0;
    for (const cplx& c : u) s += std::norm(c);
    return s;
}

inline double norm2(const CVec& u) { return std::sqrt(norm2sq(u)); }

inline CVec operator+(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline CVec operator-(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline CVec operator*(cplx s, CVec a) {
    for (cplx& c : a) c *= s;
    return a;
}

inline CVec normalized(const CVec& u) {
    double n = norm2(u);
    if (n == 0.0) throw std::domain_error("normalized: zero vector");
    return cplx{1.0 / n, 0.0} * u;
}

// C^2 smoothstep on [0,1]; 0 below, 1 above.
inline double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

inline double smoothstep_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (t - 1.0) * (t - 1.0);
}

// Wrap an angle to [0, 2*pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// Signed angular difference a-b wrapped to (-pi, pi].
inline double angle_diff(double a, double b) {
    double d = std::fmod(a - b, 2.0 * kPi);
    if (d <= -kPi) d += 2.0 * kPi;
    if (d > kPi) d -= 2.0 * kPi;
    return d;
}

// One named margin check. margin > 0 means the condition holds with room.
struct Certificate {
    std::string id;
    double margin = 0.0;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<Certificate> items;

    void add(std::string id, double margin, std::string detail = {}) {
        items.push_back({std::move(id), margin, margin > 0.0, std::move(detail)});
    }
    void add_bool(std::string id, bool ok, std::string detail = {}) {
        items.push_back({std::move(id), ok ? 1.0 : -1.0, ok, std::move(detail)});
    }
    void append(const Report& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
    }
    bool all_pass() const {
        for (const auto& c : items)
            if (!c.pass) return false;
        return true;
    }
    const Certificate* find(const std::string& id) const {
        for (const auto& c : items)
            if (c.id == id) return &c;
        return nullptr;
    }
    double margin_of(const std::string& id) const {
        const Certificate* c = find(id);
        if (!c) throw std::runtime_error("missing certificate: " + id);
        return c->margin;
    }
};

// Deterministic splitmix64 / xoshiro-free tiny RNG for sampled certificates.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * next_double(); }
    cplx unit_disc_point() {
        double r = std::sqrt(next_double());
        double t = 2.0 * kPi * next_double();
        return std::polar(r, t);
    }

  private:
    std::uint64_t state_;
};

}  // namespace discurve
