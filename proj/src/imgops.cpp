#include "iris/imgops.hpp"

#include <cmath>

namespace iris {

RealField convolve(const RealField& img, const Kernel2D& k, Border horizontal,
                   Border vertical) {
    const int w = img.width(), h = img.height();
    const int kw = k.width(), kh = k.height();
    if (kw > w || kh > h)
        throw DimensionError("convolve: kernel larger than image");
    const int cx = kw / 2, cy = kh / 2;

    RealField out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = 0; j < kh; ++j) {
                int sy = y - (j - cy);
                sy = vertical == Border::Wrap ? wrap_index(sy, h) : reflect_index(sy, h);
                for (int i = 0; i < kw; ++i) {
                    int sx = x - (i - cx);
                    sx = horizontal == Border::Wrap ? wrap_index(sx, w)
                                                    : reflect_index(sx, w);
                    acc += k.at(i, j) * img.at(sx, sy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

std::pair<RealField, RealField> sobel_gradients(const RealField& img) {
    const int w = img.width(), h = img.height();
    if (w < 3 || h < 3)
        throw DimensionError("sobel_gradients: image must be at least 3x3");

    RealField gx(w, h), gy(w, h);
    for (int y = 0; y < h; ++y) {
        const int ym = reflect_index(y - 1, h), yp = reflect_index(y + 1, h);
        for (int x = 0; x < w; ++x) {
            const int xm = reflect_index(x - 1, w), xp = reflect_index(x + 1, w);
            const double tl = img.at(xm, ym), tc = img.at(x, ym), tr = img.at(xp, ym);
            const double ml = img.at(xm, y), mr = img.at(xp, y);
            const double bl = img.at(xm, yp), bc = img.at(x, yp), br = img.at(xp, yp);
            gx.at(x, y) = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            gy.at(x, y) = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
        }
    }
    return {std::move(gx), std::move(gy)};
}

Kernel2D gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0)
        throw ParameterError("gaussian_kernel: size must be odd and positive");
    if (sigma <= 0.0)
        throw ParameterError("gaussian_kernel: sigma must be positive");
    const int c = size / 2;
    std::vector<double> taps(static_cast<size_t>(size) * size);
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dx = x - c, dy = y - c;
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            taps[static_cast<size_t>(y) * size + x] = v;
            sum += v;
        }
    }
    for (double& t : taps) t /= sum;
    return Kernel2D(size, size, std::move(taps));
}

}  // namespace iris
