#pragma once

#include <complex>
#include <vector>

#include "iris/image.hpp"

namespace iris {

/// Frequency-domain counterpart of a RealField. Bin (fx, fy) sits at
/// values[fy * width + fx]; dimensions always equal the originating field's.
class ComplexField {
  public:
    ComplexField() = default;
    ComplexField(int width, int height)
        : width_(width), height_(height),
          values_(static_cast<size_t>(width) * height) {
        if (width < 1 || height < 1)
            throw DimensionError("ComplexField: non-positive dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return values_.size(); }

    std::complex<double>& at(int fx, int fy) {
        return values_[static_cast<size_t>(fy) * width_ + fx];
    }
    std::complex<double> at(int fx, int fy) const {
        return values_[static_cast<size_t>(fy) * width_ + fx];
    }

    const std::vector<std::complex<double>>& values() const { return values_; }
    std::vector<std::complex<double>>& values() { return values_; }

    bool same_shape(const ComplexField& o) const {
        return width_ == o.width_ && height_ == o.height_;
    }

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::complex<double>> values_;
};

/// In-place 1D DFT of arbitrary length (radix-2 when the length is a power of
/// two, Bluestein otherwise). Forward is unnormalized; inverse divides by n.
void fft_1d(std::vector<std::complex<double>>& a, bool inverse);

/// Exact-size unnormalized 2D DFT. Requires width, height >= 2.
ComplexField fft2d(const RealField& img);

/// Inverse of fft2d (scales by 1/(W*H)). Returns the real part; if
/// imag_residual is given it receives the largest |imaginary| component.
RealField ifft2d(const ComplexField& spec, double* imag_residual = nullptr);

/// Full complex inverse, for spectrum algebra that is not conjugate-symmetric.
ComplexField ifft2d_complex(const ComplexField& spec);

}  // namespace iris
