#include "iris/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace iris {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(size_t n) { return n && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative Cooley-Tukey, n a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein's chirp-z: exact DFT of arbitrary n via one power-of-two
// convolution. Chirp phases use k^2 mod 2n to keep the argument small.
void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    const size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<std::complex<double>> chirp(n);
    for (size_t k = 0; k < n; ++k) {
        const size_t k2 = (k * k) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(k2) /
                           static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
    }

    std::vector<std::complex<double>> x(m, {0.0, 0.0});
    std::vector<std::complex<double>> y(m, {0.0, 0.0});
    for (size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (size_t k = 1; k < n; ++k)
        y[k] = y[m - k] = std::conj(chirp[k]);

    fft_pow2(x, false);
    fft_pow2(y, false);
    for (size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_pow2(x, true);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

}  // namespace

void fft_1d(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    if (n <= 1) return;
    if (is_pow2(n))
        fft_pow2(a, inverse);
    else
        fft_bluestein(a, inverse);
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= inv_n;
    }
}

namespace {

void fft_2d_inplace(ComplexField& f, bool inverse) {
    const int w = f.width(), h = f.height();
    std::vector<std::complex<double>> line;
    line.resize(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) line[x] = f.at(x, y);
        fft_1d(line, inverse);
        for (int x = 0; x < w; ++x) f.at(x, y) = line[x];
    }
    line.resize(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) line[y] = f.at(x, y);
        fft_1d(line, inverse);
        for (int y = 0; y < h; ++y) f.at(x, y) = line[y];
    }
}

}  // namespace

ComplexField fft2d(const RealField& img) {
    if (img.width() < 2 || img.height() < 2)
        throw DimensionError("fft2d: width and height must be >= 2");
    ComplexField f(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            f.at(x, y) = {img.at(x, y), 0.0};
    fft_2d_inplace(f, false);
    return f;
}

ComplexField ifft2d_complex(const ComplexField& spec) {
    ComplexField f = spec;
    fft_2d_inplace(f, true);
    return f;
}

RealField ifft2d(const ComplexField& spec, double* imag_residual) {
    ComplexField f = ifft2d_complex(spec);
    RealField out(spec.width(), spec.height());
    double max_imag = 0.0;
    for (int y = 0; y < spec.height(); ++y) {
        for (int x = 0; x < spec.width(); ++x) {
            const auto v = f.at(x, y);
            out.at(x, y) = v.real();
            max_imag = std::max(max_imag, std::abs(v.imag()));
        }
    }
    if (imag_residual) *imag_residual = max_imag;
    return out;
}

}  // namespace iris
