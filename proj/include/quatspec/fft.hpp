#pragma once

// Complex FFT engine behind the fast QFT path: iterative radix-2 for
// powers of two, Bluestein's chirp-z for every other length.  Transforms
// are unnormalized; callers apply their own coefficient.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace quatspec::detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t ceil_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// sign = -1: exponent e^{-2pi i nk/N}; sign = +1: e^{+2pi i nk/N}.
inline void fft_pow2(std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    if (n < 2) return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double pi = std::acos(-1.0);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / static_cast<double>(len);
        const cplx wlen{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Chirp-z: X[k] = w^{k^2/2} sum_n (x[n] w^{n^2/2}) w^{-(k-n)^2/2}; the
// convolution runs over a power-of-two cyclic buffer of size >= 2N-1.
inline void fft_bluestein(std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    const std::size_t m = ceil_pow2(2 * n - 1);
    const double pi = std::acos(-1.0);

    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // angle uses k^2 mod 2N; exact reduction keeps large-N precision
        const std::size_t k2 = (k * k) % (2 * n);
        const double ang = sign * pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = cplx{std::cos(ang), std::sin(ang)};
    }

    std::vector<cplx> a(m), b(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * inv_m * chirp[k];
}

inline void fft(std::vector<cplx>& x, int sign) {
    if (x.size() < 2) return;
    if (is_pow2(x.size()))
        fft_pow2(x, sign);
    else
        fft_bluestein(x, sign);
}

}  // namespace quatspec::detail
