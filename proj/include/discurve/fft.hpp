#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "discurve/core.hpp"

namespace discurve {

// In-place radix-2 DIT FFT, forward: X_k = sum_m x_m exp(-2*pi*i*k*m/N).
// N must be a power of two.
inline void fft_inplace(std::vector<cplx>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / double(len);
        const cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / double(n);
        for (cplx& c : a) c *= inv;
    }
}

// Fourier coefficients of samples on a uniform circle grid:
// c_k = (1/N) sum_m f(theta_m) exp(-i k theta_m), theta_m = 2*pi*m/N.
inline std::vector<cplx> circle_coefficients(std::vector<cplx> samples) {
    const std::size_t n = samples.size();
    fft_inplace(samples, false);
    const double inv = 1.0 / double(n);
    for (cplx& c : samples) c *= inv;
    return samples;
}

// Values on a uniform circle grid from (already aliased) coefficient bins.
inline std::vector<cplx> circle_values(std::vector<cplx> bins) {
    const std::size_t n = bins.size();
    for (cplx& c : bins) c *= double(n);
    fft_inplace(bins, true);
    return bins;
}

}  // namespace discurve
