#pragma once

#include <optional>
#include <vector>

#include "iris/fft.hpp"
#include "iris/image.hpp"
#include "iris/segmentation.hpp"

namespace iris {

/// Unwrapped iris: R x Theta luminance grid (row = radial position, column =
/// angle) plus a validity mask. Column j samples the ray at angle 2*pi*j/Theta;
/// row i sits at fraction (i + 0.5)/R between the pupil and iris boundaries.
struct PolarIris {
    int radial_res = 0;
    int angular_res = 0;
    RealField samples;
    std::vector<uint8_t> mask;

    bool valid_at(int i, int j) const {
        return mask[static_cast<size_t>(i) * angular_res + j] != 0;
    }
    void set_valid(int i, int j, bool v) {
        mask[static_cast<size_t>(i) * angular_res + j] = v ? 1 : 0;
    }
    size_t valid_count() const {
        size_t c = 0;
        for (uint8_t m : mask) c += m;
        return c;
    }
};

/// Rubber-sheet unwrap. Rays emanate from the pupil center; non-concentric
/// circles are handled by per-angle boundary radii. Bilinear luminance
/// sampling; the mask is 0 where the source pixel leaves the frame or the
/// segmentation's noise mask.
PolarIris unwrap(const GrayImage& img, const SegmentationResult& seg, int radial_res,
                 int angular_res);

/// Magnitude-normalized cross-power spectrum: per bin,
/// (B * conj(A)) / max(|B * conj(A)|, 1e-12).
ComplexField cross_power_spectrum(const RealField& a, const RealField& b);

struct ShiftEstimate {
    int d1 = 0;              // row shift such that b = cyclic_shift(a, d1, d2)
    int d2 = 0;              // column shift
    double peak_value = 0.0;
    double sub_d1 = 0.0;     // 3-point parabolic refinement per axis
    double sub_d2 = 0.0;
};

/// Translation estimate via the inverse transform of the normalized
/// cross-power spectrum. Peaks past dim/2 unwrap to negative shifts. Throws
/// DegenerateInputError when either field is constant.
ShiftEstimate phase_correlate(const RealField& a, const RealField& b);

/// Content shifted down-right by (d1, d2): out(y, x) = in(y - d1, x - d2),
/// cyclic. Test and pipeline helper matching phase_correlate's convention.
RealField cyclic_shift(const RealField& f, int d1, int d2);

/// Rotation by phi about the grid center and scaling by s, bilinear sampling.
/// Cells pulled from outside the frame are flagged 0 in *valid if given.
RealField warp_similarity(const RealField& f, double s, double phi,
                          std::vector<uint8_t>* valid = nullptr);

struct RegistrationParams {
    double dx = 0.0;  // column translation, real-valued
    double dy = 0.0;  // row translation
    double s = 1.0;
    double phi = 0.0;  // radians
    double residual = 0.0;
};

struct RegisterConfig {
    double s_min = 0.9, s_max = 1.1, s_step = 0.02;
    double phi_min_deg = -15.0, phi_max_deg = 15.0, phi_step_deg = 1.0;
};

/// Coarse grid search over (s, phi) with per-cell translation recovery by
/// phase correlation and a masked mean-squared-difference objective, then one
/// half-step refinement around the winner. `moving` is warped toward `fixed`.
RegistrationParams register_similarity(const RealField& moving, const RealField& fixed,
                                       const std::vector<uint8_t>* moving_mask = nullptr,
                                       const std::vector<uint8_t>* fixed_mask = nullptr,
                                       const RegisterConfig& cfg = {});

RegistrationParams register_similarity(const PolarIris& moving, const PolarIris& fixed,
                                       const RegisterConfig& cfg = {});

}  // namespace iris
