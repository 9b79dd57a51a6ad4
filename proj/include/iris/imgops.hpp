#pragma once

#include <utility>

#include "iris/image.hpp"

namespace iris {

/// Out-of-range index policy for spatial filtering. Polar grids wrap along the
/// angular axis; everything else mirrors at the border.
enum class Border { Reflect, Wrap };

inline int reflect_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0)
            i = -i - 1;
        else
            i = 2 * n - 1 - i;
    }
    return i;
}

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

/// Dense 2D convolution (kernel flipped), output dimensions equal input
/// dimensions. Throws DimensionError if the kernel exceeds the image.
RealField convolve(const RealField& img, const Kernel2D& k,
                   Border horizontal = Border::Reflect,
                   Border vertical = Border::Reflect);

/// Sobel derivative pair: gx responds to vertical edges (positive on a
/// left-dark/right-bright step), gy to horizontal edges. Image must be >= 3x3.
std::pair<RealField, RealField> sobel_gradients(const RealField& img);

/// Normalized Gaussian smoothing kernel, odd size.
Kernel2D gaussian_kernel(int size, double sigma);

}  // namespace iris
