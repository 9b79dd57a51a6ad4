#pragma once

#include <cmath>

namespace iris {

struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;

    bool contains(double x, double y) const {
        const double dx = x - cx, dy = y - cy;
        return dx * dx + dy * dy <= r * r;
    }
};

/// Rotated parabola: in the frame rotated by theta about the vertex (h, k),
/// the curve is eta = a * xi^2. Sign of a encodes the eyelid side: a < 0 is an
/// upper lid (occludes smaller y), a > 0 a lower lid (occludes larger y).
struct Parabola {
    double h = 0.0;
    double k = 0.0;
    double a = 0.0;
    double theta = 0.0;

    /// Positive on the occluded side of the curve, approximately in pixels.
    double signed_depth(double x, double y) const {
        const double c = std::cos(theta), s = std::sin(theta);
        const double u = x - h, w = y - k;
        const double xi = u * c + w * s;
        const double eta = -u * s + w * c;
        const double d = eta - a * xi * xi;
        return a < 0 ? -d : d;
    }

    bool occludes(double x, double y) const { return signed_depth(x, y) >= 0.0; }
};

inline double dist(double x0, double y0, double x1, double y1) {
    return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace iris
