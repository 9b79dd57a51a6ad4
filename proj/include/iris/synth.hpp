#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "iris/geometry.hpp"
#include "iris/image.hpp"

namespace iris {
namespace synth {

/// Deterministic eye-image description. Same spec, same render, bit for bit,
/// on every platform.
struct EyeSpec {
    Circle pupil;
    Circle iris;
    uint64_t texture_seed = 0;
    double eyelid_coverage = 0.0;  // fraction of the annulus hidden by lids, [0, 0.4]
    double noise_sigma = 0.0;

    /// Throws GeometryError unless the pupil sits strictly inside the iris and
    /// the iris inside the frame.
    void validate(int width, int height) const;
};

struct EyeGroundTruth {
    Circle pupil;
    Circle iris;
    std::optional<Parabola> upper_eyelid;
    std::optional<Parabola> lower_eyelid;
    double rotation_deg = 0.0;
    double pupil_dilation = 1.0;
};

/// Renders the eye: pupil ~0.05, sclera ~0.9, iris annulus textured by seeded
/// radial sinusoid bands plus per-sector offsets, parabolic eyelids sized to
/// the requested coverage, Gaussian noise last, clamped to [0,1].
GrayImage render(const EyeSpec& spec, int width, int height);

/// Same eye re-imaged: texture rotated about the iris center, pupil radius
/// scaled, fresh noise realization. rotation 0 / dilation 1 / sigma 0
/// reproduces render() exactly.
GrayImage rerender_variant(const EyeSpec& spec, int width, int height,
                           double rotation_deg, double pupil_dilation,
                           double noise_sigma);

/// Geometry the renderer actually used (circles after dilation/rotation plus
/// the calibrated eyelid arcs). This is the oracle downstream tests score
/// against.
EyeGroundTruth ground_truth(const EyeSpec& spec, int width, int height,
                            double rotation_deg = 0.0, double pupil_dilation = 1.0);

/// SplitMix64 step; the only RNG the generator uses.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace synth
}  // namespace iris
