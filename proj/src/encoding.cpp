#include "iris/encoding.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "iris/imgops.hpp"

namespace iris {

int gabor_kernel_size(const GaborParams& p) {
    const int half = static_cast<int>(std::ceil(3.0 * std::max(p.alpha, p.beta)));
    return 2 * half + 1;
}

GaborKernel gabor_kernel(const GaborParams& p, int size) {
    if (size < 1 || size % 2 == 0)
        throw ParameterError("gabor_kernel: size must be odd and positive");
    if (p.alpha <= 0.0 || p.beta <= 0.0)
        throw ParameterError("gabor_kernel: alpha and beta must be positive");
    if (p.u0 == 0.0 && p.v0 == 0.0)
        throw ParameterError("gabor_kernel: modulation (u0, v0) must be nonzero");

    const int c = size / 2;
    std::vector<double> re(static_cast<size_t>(size) * size);
    std::vector<double> im(static_cast<size_t>(size) * size);
    for (int j = 0; j < size; ++j) {
        for (int i = 0; i < size; ++i) {
            const double x = (i - c) - p.x0;
            const double y = (j - c) - p.y0;
            const double env = std::exp(-std::numbers::pi *
                                        (x * x / (p.alpha * p.alpha) +
                                         y * y / (p.beta * p.beta)));
            const double phase = -2.0 * std::numbers::pi * (p.u0 * x + p.v0 * y);
            re[static_cast<size_t>(j) * size + i] = env * std::cos(phase);
            im[static_cast<size_t>(j) * size + i] = env * std::sin(phase);
        }
    }
    return {Kernel2D(size, size, std::move(re)), Kernel2D(size, size, std::move(im))};
}

IrisTemplate encode(const PolarIris& polar, const std::vector<GaborParams>& bank,
                    const EncodeConfig& cfg) {
    if (bank.empty()) throw ParameterError("encode: empty filter bank");
    const int R = polar.radial_res, T = polar.angular_res;
    const int nf = static_cast<int>(bank.size());

    IrisTemplate out;
    out.radial_res = R;
    out.angular_res = T;
    out.n_filters = nf;
    out.code = BitVec(2ull * R * T * nf);
    out.mask = BitVec(2ull * R * T * nf);

    RealField mask_field(T, R);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < T; ++j)
            mask_field.at(j, i) = polar.valid_at(i, j) ? 1.0 : 0.0;

    for (int f = 0; f < nf; ++f) {
        const GaborParams& p = bank[static_cast<size_t>(f)];
        GaborKernel k = gabor_kernel(p, gabor_kernel_size(p));
        const Kernel2D k_re = k.real.zero_mean();
        const Kernel2D& k_im = k.imag;

        const RealField re = convolve(polar.samples, k_re, Border::Wrap, Border::Reflect);
        const RealField im = convolve(polar.samples, k_im, Border::Wrap, Border::Reflect);

        // Valid-cell count under the footprint, same border handling.
        Kernel2D ones(k_re.width(), k_re.height(),
                      std::vector<double>(static_cast<size_t>(k_re.width()) *
                                              k_re.height(),
                                          1.0));
        const RealField valid_count =
            convolve(mask_field, ones, Border::Wrap, Border::Reflect);
        const double taps_total = static_cast<double>(k_re.width()) * k_re.height();

        for (int theta = 0; theta < T; ++theta) {
            for (int r = 0; r < R; ++r) {
                const double vr = re.at(theta, r), vi = im.at(theta, r);
                const size_t i0 = template_bit_index(r, theta, f, 0, R, nf);
                const size_t i1 = template_bit_index(r, theta, f, 1, R, nf);
                out.code.set(i0, vr > 0.0);
                out.code.set(i1, vi > 0.0);
                const bool own = polar.valid_at(r, theta);
                const bool footprint =
                    2.0 * valid_count.at(theta, r) >= taps_total;
                const bool strong = std::hypot(vr, vi) >= cfg.amplitude_floor;
                const bool ok = own && footprint && strong;
                out.mask.set(i0, ok);
                out.mask.set(i1, ok);
            }
        }
    }
    return out;
}

IrisTemplate shift_template_columns(const IrisTemplate& t, int columns) {
    IrisTemplate out = t;
    const long long bits =
        static_cast<long long>(t.bits_per_column()) * static_cast<long long>(columns);
    out.code = t.code.rotated(bits);
    out.mask = t.mask.rotated(bits);
    return out;
}

std::vector<long> histogram(const std::vector<double>& values, int n_bins) {
    if (n_bins < 1) throw ParameterError("histogram: need n_bins >= 1");
    if (values.empty()) throw ParameterError("histogram: empty input");
    double mn = values[0], mx = values[0];
    for (double v : values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    std::vector<long> bins(static_cast<size_t>(n_bins), 0);
    if (mx <= mn) {
        bins[0] = static_cast<long>(values.size());
        return bins;
    }
    for (double v : values) {
        int b = static_cast<int>((v - mn) / (mx - mn) * n_bins);
        if (b >= n_bins) b = n_bins - 1;
        ++bins[static_cast<size_t>(b)];
    }
    return bins;
}

std::vector<long> histogram(const RealField& field, int n_bins) {
    return histogram(field.data(), n_bins);
}

std::vector<long> histogram(const BitVec& bits, int n_bins) {
    if (bits.empty()) throw ParameterError("histogram: empty input");
    std::vector<double> vals(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) vals[i] = bits.get(i) ? 1.0 : 0.0;
    return histogram(vals, n_bins);
}

namespace {

void push_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

uint32_t read_u32le(const std::vector<uint8_t>& in, size_t& pos) {
    if (pos + 4 > in.size()) throw IoError("template: truncated header");
    const uint32_t v = static_cast<uint32_t>(in[pos]) |
                       (static_cast<uint32_t>(in[pos + 1]) << 8) |
                       (static_cast<uint32_t>(in[pos + 2]) << 16) |
                       (static_cast<uint32_t>(in[pos + 3]) << 24);
    pos += 4;
    return v;
}

}  // namespace

std::vector<uint8_t> serialize_template(const IrisTemplate& t) {
    std::vector<uint8_t> out = {'I', 'R', 'T', '1'};
    push_u32le(out, static_cast<uint32_t>(t.radial_res));
    push_u32le(out, static_cast<uint32_t>(t.angular_res));
    push_u32le(out, static_cast<uint32_t>(t.n_filters));
    const auto code = t.code.to_bytes();
    const auto mask = t.mask.to_bytes();
    out.insert(out.end(), code.begin(), code.end());
    out.insert(out.end(), mask.begin(), mask.end());
    return out;
}

IrisTemplate parse_template(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 16 || bytes[0] != 'I' || bytes[1] != 'R' || bytes[2] != 'T' ||
        bytes[3] != '1')
        throw IoError("template: bad magic");
    size_t pos = 4;
    IrisTemplate t;
    t.radial_res = static_cast<int>(read_u32le(bytes, pos));
    t.angular_res = static_cast<int>(read_u32le(bytes, pos));
    t.n_filters = static_cast<int>(read_u32le(bytes, pos));
    if (t.radial_res < 1 || t.angular_res < 1 || t.n_filters < 1)
        throw IoError("template: bad dimensions");
    const size_t nbits = t.bit_count();
    const size_t nbytes = (nbits + 7) / 8;
    if (bytes.size() != pos + 2 * nbytes) throw IoError("template: bad payload size");
    std::vector<uint8_t> code(bytes.begin() + static_cast<long>(pos),
                              bytes.begin() + static_cast<long>(pos + nbytes));
    std::vector<uint8_t> mask(bytes.begin() + static_cast<long>(pos + nbytes),
                              bytes.end());
    t.code = BitVec::from_bytes(code, nbits);
    t.mask = BitVec::from_bytes(mask, nbits);
    return t;
}

void write_template(const IrisTemplate& t, const std::string& path) {
    const auto bytes = serialize_template(t);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_template: cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write_template: write failed for " + path);
}

IrisTemplate read_template(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_template: cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_template(bytes);
}

}  // namespace iris
