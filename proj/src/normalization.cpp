#include "iris/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace iris {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpectrumFloor = 1e-12;

double bilinear(const RealField& f, double x, double y) {
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0, fy = y - y0;
    auto clampx = [&](int v) { return std::clamp(v, 0, f.width() - 1); };
    auto clampy = [&](int v) { return std::clamp(v, 0, f.height() - 1); };
    const double v00 = f.at(clampx(x0), clampy(y0));
    const double v10 = f.at(clampx(x0 + 1), clampy(y0));
    const double v01 = f.at(clampx(x0), clampy(y0 + 1));
    const double v11 = f.at(clampx(x0 + 1), clampy(y0 + 1));
    return (1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11);
}

}  // namespace

PolarIris unwrap(const GrayImage& img, const SegmentationResult& seg, int radial_res,
                 int angular_res) {
    if (radial_res < 8 || angular_res < 64)
        throw ParameterError("unwrap: need radial_res >= 8 and angular_res >= 64");
    const Circle& pu = seg.pupil;
    const Circle& ir = seg.iris;
    if (dist(pu.cx, pu.cy, ir.cx, ir.cy) + pu.r >= ir.r)
        throw UnwrapError("unwrap: segmentation violates containment");

    PolarIris out;
    out.radial_res = radial_res;
    out.angular_res = angular_res;
    out.samples = RealField(angular_res, radial_res);
    out.mask.assign(static_cast<size_t>(radial_res) * angular_res, 0);

    const double ex = pu.cx - ir.cx, ey = pu.cy - ir.cy;
    const double q = ex * ex + ey * ey - ir.r * ir.r;  // < 0: pupil center inside iris

    for (int j = 0; j < angular_res; ++j) {
        const double theta = kTwoPi * j / angular_res;
        const double ux = std::cos(theta), uy = std::sin(theta);
        const double b = ux * ex + uy * ey;
        const double disc = b * b - q;
        if (disc <= 0.0)
            throw UnwrapError("unwrap: ray does not intersect iris circle");
        const double exit_r = -b + std::sqrt(disc);
        if (exit_r <= pu.r)
            throw UnwrapError("unwrap: degenerate annulus along ray");
        for (int i = 0; i < radial_res; ++i) {
            const double t = (i + 0.5) / radial_res;
            const double r = pu.r + t * (exit_r - pu.r);
            const double x = pu.cx + r * ux, y = pu.cy + r * uy;
            out.samples.at(j, i) = bilinear(img.field(), x, y);
            const int px = static_cast<int>(std::lround(x));
            const int py = static_cast<int>(std::lround(y));
            const bool inside = px >= 0 && py >= 0 && px < img.width() && py < img.height();
            out.set_valid(i, j, inside && seg.mask_at(px, py));
        }
    }
    return out;
}

ComplexField cross_power_spectrum(const RealField& a, const RealField& b) {
    if (!a.same_shape(b))
        throw DimensionError("cross_power_spectrum: dimension mismatch");
    const ComplexField fa = fft2d(a);
    const ComplexField fb = fft2d(b);
    ComplexField out(a.width(), a.height());
    for (size_t i = 0; i < out.size(); ++i) {
        const std::complex<double> c = fb.values()[i] * std::conj(fa.values()[i]);
        out.values()[i] = c / std::max(std::abs(c), kSpectrumFloor);
    }
    return out;
}

namespace {

bool is_constant(const RealField& f) {
    const auto [mn, mx] = std::minmax_element(f.data().begin(), f.data().end());
    return *mx - *mn < 1e-15;
}

// Vertex offset of the parabola through (-1, vm), (0, v0), (1, vp).
double parabolic_offset(double vm, double v0, double vp) {
    const double denom = vm - 2.0 * v0 + vp;
    if (std::abs(denom) < 1e-30) return 0.0;
    double off = 0.5 * (vm - vp) / denom;
    return std::clamp(off, -0.5, 0.5);
}

}  // namespace

ShiftEstimate phase_correlate(const RealField& a, const RealField& b) {
    if (!a.same_shape(b)) throw DimensionError("phase_correlate: dimension mismatch");
    if (is_constant(a) || is_constant(b))
        throw DegenerateInputError("phase_correlate: constant input field");

    const ComplexField cps = cross_power_spectrum(a, b);
    const RealField corr = ifft2d(cps);

    const int w = corr.width(), h = corr.height();
    int px = 0, py = 0;
    double peak = corr.at(0, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (corr.at(x, y) > peak) {
                peak = corr.at(x, y);
                px = x;
                py = y;
            }
        }
    }

    ShiftEstimate est;
    est.peak_value = peak;
    est.d1 = py > h / 2 ? py - h : py;
    est.d2 = px > w / 2 ? px - w : px;

    const double row_m = corr.at(px, (py + h - 1) % h);
    const double row_p = corr.at(px, (py + 1) % h);
    const double col_m = corr.at((px + w - 1) % w, py);
    const double col_p = corr.at((px + 1) % w, py);
    est.sub_d1 = est.d1 + parabolic_offset(row_m, peak, row_p);
    est.sub_d2 = est.d2 + parabolic_offset(col_m, peak, col_p);
    return est;
}

RealField cyclic_shift(const RealField& f, int d1, int d2) {
    const int w = f.width(), h = f.height();
    RealField out(w, h);
    for (int y = 0; y < h; ++y) {
        const int sy = ((y - d1) % h + h) % h;
        for (int x = 0; x < w; ++x) {
            const int sx = ((x - d2) % w + w) % w;
            out.at(x, y) = f.at(sx, sy);
        }
    }
    return out;
}

RealField warp_similarity(const RealField& f, double s, double phi,
                          std::vector<uint8_t>* valid) {
    const int w = f.width(), h = f.height();
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    RealField out(w, h);
    if (valid) valid->assign(static_cast<size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // Inverse map: rotate by -phi, scale by 1/s.
            const double dx = x - cx, dy = y - cy;
            const double sx = cx + (dx * cphi + dy * sphi) / s;
            const double sy = cy + (-dx * sphi + dy * cphi) / s;
            out.at(x, y) = bilinear(f, sx, sy);
            if (valid && sx >= 0.0 && sy >= 0.0 && sx <= w - 1.0 && sy <= h - 1.0)
                (*valid)[static_cast<size_t>(y) * w + x] = 1;
        }
    }
    return out;
}

namespace {

struct Candidate {
    double s = 1.0, phi = 0.0;
    ShiftEstimate shift;
    double residual = 0.0;
    bool feasible = false;
};

// Prefer lower residual; near-ties go to s nearest 1, then phi nearest 0.
bool better(const Candidate& a, const Candidate& b) {
    if (!b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (std::abs(a.residual - b.residual) > 1e-12) return a.residual < b.residual;
    const double da = std::abs(a.s - 1.0), db = std::abs(b.s - 1.0);
    if (std::abs(da - db) > 1e-12) return da < db;
    return std::abs(a.phi) < std::abs(b.phi);
}

Candidate evaluate_cell(const RealField& moving, const RealField& fixed,
                        const std::vector<uint8_t>* moving_mask,
                        const std::vector<uint8_t>* fixed_mask, double s, double phi) {
    Candidate cand;
    cand.s = s;
    cand.phi = phi;

    std::vector<uint8_t> warp_valid;
    RealField warped = warp_similarity(moving, s, phi, &warp_valid);
    if (moving_mask) {
        // A warped cell is only trustworthy if its source cell was.
        const int w = moving.width(), h = moving.height();
        const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
        const double cphi = std::cos(phi), sphi = std::sin(phi);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!warp_valid[static_cast<size_t>(y) * w + x]) continue;
                const double dx = x - cx, dy = y - cy;
                const int sx = static_cast<int>(std::lround(cx + (dx * cphi + dy * sphi) / s));
                const int sy = static_cast<int>(std::lround(cy + (-dx * sphi + dy * cphi) / s));
                if (sx < 0 || sy < 0 || sx >= w || sy >= h ||
                    !(*moving_mask)[static_cast<size_t>(sy) * w + sx])
                    warp_valid[static_cast<size_t>(y) * w + x] = 0;
            }
        }
    }

    try {
        cand.shift = phase_correlate(warped, fixed);
    } catch (const DegenerateInputError&) {
        return cand;
    }

    const int w = moving.width(), h = moving.height();
    const RealField aligned = cyclic_shift(warped, cand.shift.d1, cand.shift.d2);
    double sum = 0.0;
    long n = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int sy = ((y - cand.shift.d1) % h + h) % h;
            const int sx = ((x - cand.shift.d2) % w + w) % w;
            if (!warp_valid[static_cast<size_t>(sy) * w + sx]) continue;
            if (fixed_mask && !(*fixed_mask)[static_cast<size_t>(y) * w + x]) continue;
            const double d = fixed.at(x, y) - aligned.at(x, y);
            sum += d * d;
            ++n;
        }
    }
    if (n < (static_cast<long>(w) * h) / 20) return cand;  // too little overlap
    cand.residual = sum / static_cast<double>(n);
    cand.feasible = true;
    return cand;
}

}  // namespace

RegistrationParams register_similarity(const RealField& moving, const RealField& fixed,
                                       const std::vector<uint8_t>* moving_mask,
                                       const std::vector<uint8_t>* fixed_mask,
                                       const RegisterConfig& cfg) {
    if (!moving.same_shape(fixed))
        throw DimensionError("register_similarity: dimension mismatch");

    const double deg = std::numbers::pi / 180.0;
    Candidate best;
    for (double s = cfg.s_min; s <= cfg.s_max + 1e-9; s += cfg.s_step) {
        for (double p = cfg.phi_min_deg; p <= cfg.phi_max_deg + 1e-9;
             p += cfg.phi_step_deg) {
            Candidate c =
                evaluate_cell(moving, fixed, moving_mask, fixed_mask, s, p * deg);
            if (better(c, best)) best = c;
        }
    }
    if (!best.feasible)
        throw RegistrationError("register_similarity: no candidate with valid overlap");

    // One half-step refinement around the coarse winner.
    const double s0 = best.s, phi0 = best.phi;
    for (int is = -1; is <= 1; ++is) {
        for (int ip = -1; ip <= 1; ++ip) {
            if (is == 0 && ip == 0) continue;
            Candidate c = evaluate_cell(moving, fixed, moving_mask, fixed_mask,
                                        s0 + is * cfg.s_step / 2.0,
                                        phi0 + ip * (cfg.phi_step_deg / 2.0) * deg);
            if (better(c, best)) best = c;
        }
    }

    RegistrationParams out;
    out.dx = best.shift.sub_d2;
    out.dy = best.shift.sub_d1;
    out.s = best.s;
    out.phi = best.phi;
    out.residual = best.residual;
    return out;
}

RegistrationParams register_similarity(const PolarIris& moving, const PolarIris& fixed,
                                       const RegisterConfig& cfg) {
    return register_similarity(moving.samples, fixed.samples, &moving.mask, &fixed.mask,
                               cfg);
}

}  // namespace iris
