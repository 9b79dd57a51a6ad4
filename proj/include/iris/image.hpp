#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "iris/errors.hpp"

namespace iris {

/// Unconstrained 2D real raster, row-major. Intermediate results (gradients,
/// correlation surfaces, filter responses) live here.
class RealField {
  public:
    RealField() = default;
    RealField(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(static_cast<size_t>(width) * height, fill) {
        if (width < 1 || height < 1)
            throw DimensionError("RealField: non-positive dimensions");
    }
    RealField(int width, int height, std::vector<double> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (width < 1 || height < 1)
            throw DimensionError("RealField: non-positive dimensions");
        if (data_.size() != static_cast<size_t>(width) * height)
            throw DimensionError("RealField: data size does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return data_.size(); }

    double& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<size_t>(y) * width_ + x]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const RealField& o) const {
        return width_ == o.width_ && height_ == o.height_;
    }

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Grayscale image: a RealField whose values are finite luminances in [0,1].
/// The pipeline's input currency; validated on construction.
class GrayImage {
  public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0) : f_(width, height, fill) {
        validate();
    }
    explicit GrayImage(RealField f) : f_(std::move(f)) { validate(); }
    GrayImage(int width, int height, std::vector<double> data)
        : f_(width, height, std::move(data)) {
        validate();
    }

    int width() const { return f_.width(); }
    int height() const { return f_.height(); }
    size_t size() const { return f_.size(); }
    double at(int x, int y) const { return f_.at(x, y); }

    const RealField& field() const { return f_; }
    operator const RealField&() const { return f_; }

    /// Clamp an arbitrary field into [0,1] and wrap it as an image.
    static GrayImage clamped(const RealField& f) {
        RealField out = f;
        for (double& v : out.data()) {
            if (!std::isfinite(v)) v = 0.0;
            v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        }
        return GrayImage(std::move(out));
    }

  private:
    void validate() const {
        for (double v : f_.data())
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw ParameterError("GrayImage: luminance outside [0,1]");
    }
    RealField f_;
};

/// Small dense convolution kernel with odd tap counts (a center tap exists).
class Kernel2D {
  public:
    Kernel2D(int width, int height, std::vector<double> taps)
        : width_(width), height_(height), taps_(std::move(taps)) {
        if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0)
            throw ParameterError("Kernel2D: tap counts must be odd and positive");
        if (taps_.size() != static_cast<size_t>(width) * height)
            throw ParameterError("Kernel2D: tap count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    double at(int x, int y) const { return taps_[static_cast<size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return taps_[static_cast<size_t>(y) * width_ + x]; }
    const std::vector<double>& taps() const { return taps_; }

    double sum() const {
        double s = 0.0;
        for (double t : taps_) s += t;
        return s;
    }

    /// Same taps shifted to zero mean. Used where a filter must ignore DC.
    Kernel2D zero_mean() const {
        Kernel2D k = *this;
        double m = sum() / static_cast<double>(k.taps_.size());
        for (double& t : k.taps_) t -= m;
        return k;
    }

  private:
    int width_;
    int height_;
    std::vector<double> taps_;
};

}  // namespace iris
