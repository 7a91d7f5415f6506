#ifndef EMOFUSE_SRC_FFT_HPP
#define EMOFUSE_SRC_FFT_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace emofuse::detail {

// Iterative radix-2 Cooley-Tukey transform, in place. Size must be a power
// of two.
inline void fft_in_place(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
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

}  // namespace emofuse::detail

#endif  // EMOFUSE_SRC_FFT_HPP
