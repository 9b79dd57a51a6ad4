#pragma once

#include <optional>
#include <vector>

#include "iris/geometry.hpp"
#include "iris/image.hpp"

namespace iris {

/// Binary edge raster plus gradient orientation (radians) per edge pixel.
class EdgeMap {
  public:
    EdgeMap() = default;
    EdgeMap(int width, int height)
        : width_(width), height_(height),
          edge_(static_cast<size_t>(width) * height, 0),
          orient_(static_cast<size_t>(width) * height, 0.0f) {}

    int width() const { return width_; }
    int height() const { return height_; }

    bool is_edge(int x, int y) const {
        return edge_[static_cast<size_t>(y) * width_ + x] != 0;
    }
    void set_edge(int x, int y, float orientation) {
        edge_[static_cast<size_t>(y) * width_ + x] = 1;
        orient_[static_cast<size_t>(y) * width_ + x] = orientation;
    }
    float orientation(int x, int y) const {
        return orient_[static_cast<size_t>(y) * width_ + x];
    }

    size_t edge_count() const {
        size_t c = 0;
        for (uint8_t e : edge_) c += e;
        return c;
    }

    struct Point {
        int x, y;
    };
    std::vector<Point> edge_points() const {
        std::vector<Point> pts;
        pts.reserve(1024);
        for (int y = 0; y < height_; ++y)
            for (int x = 0; x < width_; ++x)
                if (is_edge(x, y)) pts.push_back({x, y});
        return pts;
    }

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<uint8_t> edge_;
    std::vector<float> orient_;
};

enum class OrientationBias { None, Vertical, Horizontal };

/// Canny: Gaussian smoothing, Sobel gradients, orientation-bias weighting,
/// non-maximum suppression, two-threshold hysteresis (8-connected). The
/// thresholds are fractions of the maximum gradient magnitude.
EdgeMap canny(const RealField& img, double low_thresh, double high_thresh,
              OrientationBias bias = OrientationBias::None, double gauss_sigma = 2.0,
              int gauss_size = 9);

/// A circle's Hough support: the number of edge pixels whose rounded distance
/// to (cx, cy) equals r. hough_circle returns the grid argmax of this score.
struct HoughCircleResult {
    Circle circle;
    long score = 0;
};

struct CenterWindow {
    int x0, x1, y0, y1;  // inclusive
};

/// Integer-grid circular Hough transform over centers in the image (or the
/// given window) and radii in [r_min, r_max]. Ties break toward smaller r,
/// then smaller cy, then smaller cx. Throws NoEdgesError on an empty map.
HoughCircleResult hough_circle(const EdgeMap& edges, int r_min, int r_max,
                               std::optional<CenterWindow> window = std::nullopt);

enum class EyelidRegion { Upper, Lower };

struct HoughParabolaConfig {
    int vertex_step = 2;          // h, k quantization in pixels
    int curvature_steps = 20;     // log-spaced |a| values
    double curvature_min = 1e-4;
    double curvature_max = 1e-1;
    std::vector<double> thetas = {-0.2, -0.1, 0.0, 0.1, 0.2};
    int min_votes = 25;
    double boundary_exclusion = 3.0;  // px around pupil/iris circles ignored
};

/// Accumulator fit of a rotated parabola to eyelid edges in the band above
/// (Upper) or below (Lower) the iris center. Absent when the best cell gets
/// fewer than min_votes supporting edge pixels.
std::optional<Parabola> hough_parabola(const EdgeMap& edges, EyelidRegion region,
                                       const Circle& iris, const Circle& pupil,
                                       const HoughParabolaConfig& cfg = {});

struct SegmentationConfig {
    double canny_low = 0.1;
    double canny_high = 0.3;
    double gauss_sigma = 2.0;
    int gauss_size = 9;
    int pupil_r_min = 18;
    int pupil_r_max = 48;
    int iris_r_min = 55;
    int iris_r_max = 115;
    int iris_center_slack = 10;  // iris center search box around pupil center
    double dark_floor = 0.02;    // luminance below this is masked out
    HoughParabolaConfig parabola;
};

struct SegmentationResult {
    Circle pupil;
    Circle iris;
    std::optional<Parabola> upper_eyelid;
    std::optional<Parabola> lower_eyelid;
    /// 1 = usable iris pixel, 0 = occluded or non-iris; image dimensions.
    std::vector<uint8_t> noise_mask;
    int mask_width = 0;
    int mask_height = 0;

    bool mask_at(int x, int y) const {
        return noise_mask[static_cast<size_t>(y) * mask_width + x] != 0;
    }
};

/// Thrown when the recovered circles violate pupil-inside-iris containment;
/// carries both circles for diagnostics.
struct SegmentationFailure : Error {
    Circle pupil, iris;
    SegmentationFailure(const std::string& msg, Circle p, Circle i)
        : Error(msg), pupil(p), iris(i) {}
};

/// Full localization: pupil and iris circles from vertically biased edges
/// (sub-pixel refined by a least-squares fit on supporting edge pixels),
/// eyelid parabolas from horizontally biased edges, then the image-domain
/// usable-iris mask.
SegmentationResult segment(const GrayImage& img, const SegmentationConfig& cfg = {});

}  // namespace iris
