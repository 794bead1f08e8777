#pragma once

#include <complex>
#include <vector>

#include "waysim/errors.hpp"
#include "waysim/grid.hpp"

namespace waysim::detail {

/// In-place radix-2 Cooley-Tukey transform. sign = -1 forward,
/// +1 inverse (unscaled; caller divides by n).
inline void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    require(is_power_of_two(static_cast<std::int64_t>(n)), "n-not-power-of-two",
            "fft length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Linear convolution of two real sequences, c[k] = sum_i a[i] b[k-i],
/// length na + nb - 1, via zero-padded FFTs.
inline std::vector<double> convolve_real(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t out_len = na + nb - 1;
    std::size_t nfft = 1;
    while (nfft < out_len) nfft <<= 1;
    std::vector<std::complex<double>> fa(nfft), fb(nfft);
    for (std::size_t i = 0; i < na; ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < nb; ++i) fb[i] = b[i];
    fft_radix2(fa, -1);
    fft_radix2(fb, -1);
    for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    fft_radix2(fa, +1);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i)
        out[i] = fa[i].real() / static_cast<double>(nfft);
    return out;
}

} // namespace waysim::detail
