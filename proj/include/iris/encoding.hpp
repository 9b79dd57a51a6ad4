#pragma once

#include <string>
#include <vector>

#include "iris/bitvec.hpp"
#include "iris/image.hpp"
#include "iris/normalization.hpp"

namespace iris {

/// 2D Gabor filter parameters:
/// G(x,y) = exp(-pi[(x-x0)^2/a^2 + (y-y0)^2/b^2]) * exp(-2pi*i[u0(x-x0) + v0(y-y0)])
/// x runs along the angular axis of the polar grid, y along the radial axis.
struct GaborParams {
    double x0 = 0.0, y0 = 0.0;
    double alpha = 3.0, beta = 3.0;  // effective width and length, samples
    double u0 = 0.125, v0 = 0.0;     // modulation, cycles/sample

    double spatial_frequency() const { return std::hypot(u0, v0); }
};

struct GaborKernel {
    Kernel2D real;
    Kernel2D imag;
};

/// Raw Eq-style taps on an odd size x size grid centered on (0,0); the center
/// tap is exactly 1+0i when x0 = y0 = 0. Callers that must not respond to DC
/// zero-mean the real part (encode does).
GaborKernel gabor_kernel(const GaborParams& p, int size);

/// Smallest odd size covering +/- 3*max(alpha, beta) samples.
int gabor_kernel_size(const GaborParams& p);

/// 2-bit-per-response phase code. Bit layout is normative for stored
/// templates: bit index = 2*(f + n_filters*(r + R*theta)) + b, b = 0 for the
/// real-part sign, 1 for the imaginary-part sign. One angular column therefore
/// occupies 2*n_filters*R contiguous bits and a cyclic column shift of the
/// grid is a cyclic rotation of the bit vector.
struct IrisTemplate {
    int radial_res = 0;
    int angular_res = 0;
    int n_filters = 0;
    BitVec code;
    BitVec mask;

    size_t bit_count() const {
        return 2ull * radial_res * angular_res * n_filters;
    }
    size_t bits_per_column() const { return 2ull * radial_res * n_filters; }
    bool same_shape(const IrisTemplate& o) const {
        return radial_res == o.radial_res && angular_res == o.angular_res &&
               n_filters == o.n_filters;
    }
};

inline size_t template_bit_index(int r, int theta, int f, int bit, int radial_res,
                                 int n_filters) {
    return 2 * (static_cast<size_t>(f) +
                static_cast<size_t>(n_filters) *
                    (static_cast<size_t>(r) +
                     static_cast<size_t>(radial_res) * static_cast<size_t>(theta))) +
           static_cast<size_t>(bit);
}

struct EncodeConfig {
    double amplitude_floor = 1e-4;
};

/// Gabor phase demodulation of the polar grid. Convolution wraps along the
/// angular axis and reflects along the radial axis; the real kernel is
/// zero-meaned so a constant region produces no response. A mask bit is set
/// only where the source cell is valid, the kernel footprint sees a majority
/// of valid cells, and the response clears the amplitude floor.
IrisTemplate encode(const PolarIris& polar, const std::vector<GaborParams>& bank,
                    const EncodeConfig& cfg = {});

/// Template cyclically shifted by whole angular columns (code and mask move
/// together).
IrisTemplate shift_template_columns(const IrisTemplate& t, int columns);

/// Equal-width histogram over [min, max]; the max value lands in the last bin.
std::vector<long> histogram(const std::vector<double>& values, int n_bins);
std::vector<long> histogram(const RealField& field, int n_bins);
std::vector<long> histogram(const BitVec& bits, int n_bins);

/// Normative template container: "IRT1", then R, Theta, n_filters as u32
/// little-endian, then code bits packed LSB-first, then mask bits.
std::vector<uint8_t> serialize_template(const IrisTemplate& t);
IrisTemplate parse_template(const std::vector<uint8_t>& bytes);
void write_template(const IrisTemplate& t, const std::string& path);
IrisTemplate read_template(const std::string& path);

}  // namespace iris
