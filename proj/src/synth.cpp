#include "iris/synth.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace iris {
namespace synth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kPupilLum = 0.05;
constexpr double kScleraLum = 0.9;
constexpr double kLidLum = 0.75;
constexpr double kIrisBase = 0.45;
constexpr int kBands = 32;
constexpr int kSectors = 16;

struct Band {
    double cycles;   // angular cycles per revolution (integer-valued)
    double amp;
    double phase_a;  // angular phase
    double radial;   // radial half-cycles across the annulus
    double phase_r;
};

// Radially striated texture over normalized annulus coordinates: t in [0,1]
// runs pupil boundary to iris boundary, theta is the ray angle. Being a pure
// function of (t, theta) is what makes unwrapped grids invariant to pupil
// dilation. Angular frequencies stay in [6, 28] cycles/rev: high enough to
// drive the default Gabor bank, low enough that sub-column misalignment
// barely moves response phases.
struct Texture {
    std::array<Band, kBands> bands;
    std::array<double, kSectors> sector;

    double eval(double t, double theta) const {
        double v = kIrisBase;
        for (const Band& b : bands)
            v += b.amp * std::cos(b.cycles * theta + b.phase_a) *
                 std::cos(kPi * b.radial * t + b.phase_r);
        double frac = theta / kTwoPi;
        frac -= std::floor(frac);
        int s = static_cast<int>(frac * kSectors);
        if (s >= kSectors) s = kSectors - 1;
        v += sector[static_cast<size_t>(s)];
        return v;
    }
};

Texture make_texture(uint64_t seed) {
    uint64_t st = seed ^ 0x1c69b3f74ac4ab55ULL;
    Texture tex;
    for (int b = 0; b < kBands; ++b) {
        Band& band = tex.bands[static_cast<size_t>(b)];
        band.cycles = 6.0 + std::floor(22.0 * b / (kBands - 1) + 0.5);
        band.amp = 0.045 * (0.5 + uniform01(st));
        band.phase_a = kTwoPi * uniform01(st);
        band.radial = std::floor(4.0 * uniform01(st));  // 0..3
        band.phase_r = kTwoPi * uniform01(st);
    }
    for (int s = 0; s < kSectors; ++s)
        tex.sector[static_cast<size_t>(s)] = 0.12 * (uniform01(st) - 0.5);
    return tex;
}

double mix(double a, double b, double f) { return a + (b - a) * f; }

double coverage_frac(double d, double r) {
    const double f = r - d + 0.5;
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

// Distance from `origin` to the circle boundary along direction (cos, sin).
// Requires origin strictly inside the circle.
double ray_exit_distance(double ox, double oy, double dirx, double diry,
                         const Circle& c) {
    const double ex = ox - c.cx, ey = oy - c.cy;
    const double b = dirx * ex + diry * ey;
    const double q = ex * ex + ey * ey - c.r * c.r;
    const double disc = b * b - q;
    if (q >= 0.0 || disc <= 0.0)
        throw GeometryError("ray_exit_distance: origin not inside circle");
    return -b + std::sqrt(disc);
}

// Fraction of annulus pixels the arc hides, counted on the integer grid.
double occluded_fraction(const Parabola& arc, const EyeSpec& spec, int w, int h) {
    const Circle& ir = spec.iris;
    const int x0 = std::max(0, static_cast<int>(std::floor(ir.cx - ir.r)));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(ir.cx + ir.r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(ir.cy - ir.r)));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(ir.cy + ir.r)));
    long total = 0, hit = 0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (!ir.contains(x, y)) continue;
            if (spec.pupil.contains(x, y)) continue;
            ++total;
            if (arc.occludes(x, y)) ++hit;
        }
    }
    return total > 0 ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

// Places one lid so it hides `target` of the annulus: curvature fixed at
// 0.3/r, vertex height found by bisection (coverage is monotone in k).
std::optional<Parabola> calibrate_lid(bool upper, double target, const EyeSpec& spec,
                                      int w, int h) {
    if (target <= 0.0) return std::nullopt;
    const Circle& ir = spec.iris;
    Parabola arc;
    arc.h = ir.cx;
    arc.theta = 0.0;
    arc.a = (upper ? -1.0 : 1.0) * 0.3 / ir.r;

    // Upper lid: larger k covers more. Lower lid: smaller k covers more.
    double lo = ir.cy - 2.0 * ir.r, hi = ir.cy + 2.0 * ir.r;
    for (int it = 0; it < 48; ++it) {
        arc.k = 0.5 * (lo + hi);
        const double f = occluded_fraction(arc, spec, w, h);
        const bool covers_too_much = f > target;
        if (upper) {
            (covers_too_much ? hi : lo) = arc.k;
        } else {
            (covers_too_much ? lo : hi) = arc.k;
        }
    }
    return arc;
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t st = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(st);
}

uint64_t variant_salt(double rotation_deg, double dilation, double sigma) {
    uint64_t s = 0x76a5c03ed9f0b14dULL;
    s = mix_seed(s, std::bit_cast<uint64_t>(rotation_deg));
    s = mix_seed(s, std::bit_cast<uint64_t>(dilation));
    s = mix_seed(s, std::bit_cast<uint64_t>(sigma));
    return s;
}

GrayImage render_impl(const EyeSpec& spec, int w, int h, double rotation_deg,
                      double dilation, double noise_sigma, uint64_t noise_salt) {
    spec.validate(w, h);
    const double rot = rotation_deg * kPi / 180.0;

    // The eyeball rotates about the iris center; the pupil center swings with
    // it and the pupil radius scales. Lids belong to the face and stay put.
    const Circle& ir = spec.iris;
    const double ca = std::cos(rot), sa = std::sin(rot);
    const double px0 = spec.pupil.cx - ir.cx, py0 = spec.pupil.cy - ir.cy;
    Circle pupil{ir.cx + px0 * ca - py0 * sa, ir.cy + px0 * sa + py0 * ca,
                 spec.pupil.r * dilation};
    if (dist(pupil.cx, pupil.cy, ir.cx, ir.cy) + pupil.r >= ir.r)
        throw GeometryError("render: dilated pupil not strictly inside iris");

    const Texture tex = make_texture(spec.texture_seed);
    const auto upper = calibrate_lid(true, spec.eyelid_coverage / 2.0, spec, w, h);
    const auto lower = calibrate_lid(false, spec.eyelid_coverage / 2.0, spec, w, h);

    RealField img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double d_ir = dist(x, y, ir.cx, ir.cy);
            const double d_pu = dist(x, y, pupil.cx, pupil.cy);
            double v = kScleraLum;
            const double in_iris = coverage_frac(d_ir, ir.r);
            if (in_iris > 0.0) {
                const double theta = std::atan2(y - pupil.cy, x - pupil.cx);
                const double exit =
                    ray_exit_distance(pupil.cx, pupil.cy, std::cos(theta),
                                      std::sin(theta), ir);
                double t = (d_pu - pupil.r) / (exit - pupil.r);
                t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
                v = mix(kScleraLum, tex.eval(t, theta - rot), in_iris);
            }
            const double in_pupil = coverage_frac(d_pu, pupil.r);
            if (in_pupil > 0.0) v = mix(v, kPupilLum, in_pupil);
            if (upper) {
                const double f = coverage_frac(-upper->signed_depth(x, y), 0.0);
                if (f > 0.0) v = mix(v, kLidLum, f);
            }
            if (lower) {
                const double f = coverage_frac(-lower->signed_depth(x, y), 0.0);
                if (f > 0.0) v = mix(v, kLidLum, f);
            }
            img.at(x, y) = v;
        }
    }

    if (noise_sigma > 0.0) {
        uint64_t st = mix_seed(spec.texture_seed, noise_salt);
        auto& data = img.data();
        for (size_t i = 0; i + 1 < data.size(); i += 2) {
            // Box-Muller on the portable uniform stream.
            const double u1 = std::max(uniform01(st), 1e-300);
            const double u2 = uniform01(st);
            const double mag = noise_sigma * std::sqrt(-2.0 * std::log(u1));
            data[i] += mag * std::cos(kTwoPi * u2);
            data[i + 1] += mag * std::sin(kTwoPi * u2);
        }
        if (data.size() % 2 == 1) {
            const double u1 = std::max(uniform01(st), 1e-300);
            const double u2 = uniform01(st);
            data.back() +=
                noise_sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
        }
    }
    return GrayImage::clamped(img);
}

}  // namespace

void EyeSpec::validate(int width, int height) const {
    if (pupil.r <= 0.0 || iris.r <= 0.0)
        throw GeometryError("EyeSpec: radii must be positive");
    if (dist(pupil.cx, pupil.cy, iris.cx, iris.cy) + pupil.r >= iris.r)
        throw GeometryError("EyeSpec: pupil not strictly inside iris");
    if (iris.cx - iris.r < 0.0 || iris.cx + iris.r > width - 1 ||
        iris.cy - iris.r < 0.0 || iris.cy + iris.r > height - 1)
        throw GeometryError("EyeSpec: iris does not fit inside the frame");
    if (eyelid_coverage < 0.0 || eyelid_coverage > 0.4)
        throw GeometryError("EyeSpec: eyelid_coverage outside [0, 0.4]");
    if (noise_sigma < 0.0)
        throw GeometryError("EyeSpec: negative noise_sigma");
}

GrayImage render(const EyeSpec& spec, int width, int height) {
    return render_impl(spec, width, height, 0.0, 1.0, spec.noise_sigma, 0);
}

GrayImage rerender_variant(const EyeSpec& spec, int width, int height,
                           double rotation_deg, double pupil_dilation,
                           double noise_sigma) {
    if (rotation_deg == 0.0 && pupil_dilation == 1.0 && noise_sigma == 0.0)
        return render_impl(spec, width, height, 0.0, 1.0, 0.0, 0);
    return render_impl(spec, width, height, rotation_deg, pupil_dilation,
                       noise_sigma,
                       variant_salt(rotation_deg, pupil_dilation, noise_sigma));
}

EyeGroundTruth ground_truth(const EyeSpec& spec, int width, int height,
                            double rotation_deg, double pupil_dilation) {
    spec.validate(width, height);
    const double rot = rotation_deg * kPi / 180.0;
    const Circle& ir = spec.iris;
    const double ca = std::cos(rot), sa = std::sin(rot);
    const double px0 = spec.pupil.cx - ir.cx, py0 = spec.pupil.cy - ir.cy;

    EyeGroundTruth gt;
    gt.pupil = Circle{ir.cx + px0 * ca - py0 * sa, ir.cy + px0 * sa + py0 * ca,
                      spec.pupil.r * pupil_dilation};
    gt.iris = ir;
    gt.upper_eyelid = calibrate_lid(true, spec.eyelid_coverage / 2.0, spec, width, height);
    gt.lower_eyelid = calibrate_lid(false, spec.eyelid_coverage / 2.0, spec, width, height);
    gt.rotation_deg = rotation_deg;
    gt.pupil_dilation = pupil_dilation;
    return gt;
}

}  // namespace synth
}  // namespace iris
