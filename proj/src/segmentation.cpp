#include "iris/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "iris/imgops.hpp"

namespace iris {

namespace {

constexpr double kPi = std::numbers::pi;

Kernel2D gaussian_1d(int size, double sigma, bool horizontal) {
    const int c = size / 2;
    std::vector<double> taps(static_cast<size_t>(size));
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - c;
        taps[static_cast<size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += taps[static_cast<size_t>(i)];
    }
    for (double& t : taps) t /= sum;
    return horizontal ? Kernel2D(size, 1, std::move(taps))
                      : Kernel2D(1, size, std::move(taps));
}

int rounded_radius(int dx, int dy) {
    return static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(dx) * dx + static_cast<double>(dy) * dy)));
}

}  // namespace

EdgeMap canny(const RealField& img, double low_thresh, double high_thresh,
              OrientationBias bias, double gauss_sigma, int gauss_size) {
    if (!(low_thresh > 0.0 && low_thresh < high_thresh && high_thresh <= 1.0))
        throw ParameterError("canny: need 0 < low < high <= 1");
    if (img.width() < 5 || img.height() < 5)
        throw DimensionError("canny: image must be at least 5x5");

    RealField smooth = convolve(img, gaussian_1d(gauss_size, gauss_sigma, true));
    smooth = convolve(smooth, gaussian_1d(gauss_size, gauss_sigma, false));
    auto [gx, gy] = sobel_gradients(smooth);

    const double wx = bias == OrientationBias::Horizontal ? 0.0 : 1.0;
    const double wy = bias == OrientationBias::Vertical ? 0.0 : 1.0;

    const int w = img.width(), h = img.height();
    RealField mag(w, h);
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double mx = wx * gx.at(x, y), my = wy * gy.at(x, y);
            const double m = std::hypot(mx, my);
            mag.at(x, y) = m;
            max_mag = std::max(max_mag, m);
        }
    }
    EdgeMap out(w, h);
    if (max_mag <= 0.0) return out;  // constant (or fully suppressed) image

    const double low = low_thresh * max_mag;
    const double high = high_thresh * max_mag;

    // Non-maximum suppression along the (biased) gradient direction. The
    // asymmetric comparison keeps exactly one pixel of an equal-magnitude
    // plateau. 0 = out, 1 = weak candidate, 2 = strong seed.
    std::vector<uint8_t> state(static_cast<size_t>(w) * h, 0);
    std::vector<float> orient(static_cast<size_t>(w) * h, 0.0f);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double m = mag.at(x, y);
            if (m < low) continue;
            const double mx = wx * gx.at(x, y), my = wy * gy.at(x, y);
            double ang = std::atan2(my, mx);
            orient[static_cast<size_t>(y) * w + x] = static_cast<float>(ang);
            if (ang < 0) ang += kPi;
            const double deg = ang * 180.0 / kPi;
            int dx, dy;
            if (deg < 22.5 || deg >= 157.5) {
                dx = 1, dy = 0;
            } else if (deg < 67.5) {
                dx = 1, dy = 1;
            } else if (deg < 112.5) {
                dx = 0, dy = 1;
            } else {
                dx = 1, dy = -1;
            }
            const double n_plus = mag.at(x + dx, y + dy);
            const double n_minus = mag.at(x - dx, y - dy);
            if (m > n_plus && m >= n_minus)
                state[static_cast<size_t>(y) * w + x] = m >= high ? 2 : 1;
        }
    }

    // Hysteresis: strong pixels seed an 8-connected walk through weak ones.
    std::vector<std::pair<int, int>> stack;
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            if (state[static_cast<size_t>(y) * w + x] == 2) stack.emplace_back(x, y);
    std::vector<uint8_t> kept(static_cast<size_t>(w) * h, 0);
    for (auto& [sx, sy] : stack) kept[static_cast<size_t>(sy) * w + sx] = 1;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                const size_t idx = static_cast<size_t>(ny) * w + nx;
                if (state[idx] != 0 && !kept[idx]) {
                    kept[idx] = 1;
                    stack.emplace_back(nx, ny);
                }
            }
        }
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (kept[static_cast<size_t>(y) * w + x])
                out.set_edge(x, y, orient[static_cast<size_t>(y) * w + x]);
    return out;
}

namespace {

struct HoughBest {
    long score = -1;
    int r = 0, cy = 0, cx = 0;

    // Higher score wins; ties prefer smaller radius, then smaller (cy, cx).
    void consider(long s, int rr, int yy, int xx) {
        if (s > score) {
            score = s, r = rr, cy = yy, cx = xx;
        }
    }
};

HoughCircleResult hough_windowed(const std::vector<EdgeMap::Point>& pts, int r_min,
                                 int r_max, const CenterWindow& win) {
    const int nx = win.x1 - win.x0 + 1, ny = win.y1 - win.y0 + 1;
    const int nr = r_max - r_min + 1;
    std::vector<int> acc(static_cast<size_t>(nx) * ny * nr, 0);
    for (const auto& p : pts) {
        for (int cy = win.y0; cy <= win.y1; ++cy) {
            for (int cx = win.x0; cx <= win.x1; ++cx) {
                const int r = rounded_radius(p.x - cx, p.y - cy);
                if (r < r_min || r > r_max) continue;
                ++acc[(static_cast<size_t>(cy - win.y0) * nx + (cx - win.x0)) * nr +
                      (r - r_min)];
            }
        }
    }
    HoughBest best;
    for (int ri = 0; ri < nr; ++ri)
        for (int cy = 0; cy < ny; ++cy)
            for (int cx = 0; cx < nx; ++cx)
                best.consider(
                    acc[(static_cast<size_t>(cy) * nx + cx) * nr + ri],
                    ri + r_min, cy + win.y0, cx + win.x0);
    return {Circle{static_cast<double>(best.cx), static_cast<double>(best.cy),
                   static_cast<double>(best.r)},
            best.score};
}

HoughCircleResult hough_full(const std::vector<EdgeMap::Point>& pts, int w, int h,
                             int r_min, int r_max) {
    const int nr = r_max - r_min + 1;
    const int side = 2 * r_max + 1;
    // Radius-by-offset lookup shared by all edge pixels.
    std::vector<int16_t> rtab(static_cast<size_t>(side) * side);
    for (int dy = -r_max; dy <= r_max; ++dy)
        for (int dx = -r_max; dx <= r_max; ++dx)
            rtab[static_cast<size_t>(dy + r_max) * side + (dx + r_max)] =
                static_cast<int16_t>(rounded_radius(dx, dy));

    const size_t acc_size = static_cast<size_t>(w) * h * nr;
    auto vote = [&](size_t begin, size_t end, std::vector<int>& acc) {
        for (size_t pi = begin; pi < end; ++pi) {
            const auto& p = pts[pi];
            const int dy0 = std::max(-r_max, p.y - (h - 1)), dy1 = std::min(r_max, p.y);
            const int dx0 = std::max(-r_max, p.x - (w - 1)), dx1 = std::min(r_max, p.x);
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int16_t* row = &rtab[static_cast<size_t>(dy + r_max) * side + r_max];
                const size_t base = (static_cast<size_t>(p.y - dy) * w + p.x) *
                                    static_cast<size_t>(nr);
                for (int dx = dx0; dx <= dx1; ++dx) {
                    const int r = row[dx];
                    if (r < r_min || r > r_max) continue;
                    // center = (p.x - dx, p.y - dy)
                    ++acc[base - static_cast<size_t>(dx) * nr + (r - r_min)];
                }
            }
        }
    };

    // Two-way partition with deterministic merge; vote counts are
    // order-independent.
    std::vector<int> acc_a(acc_size, 0);
    if (pts.size() >= 512 && std::thread::hardware_concurrency() > 1) {
        std::vector<int> acc_b(acc_size, 0);
        const size_t mid = pts.size() / 2;
        std::thread t([&] { vote(mid, pts.size(), acc_b); });
        vote(0, mid, acc_a);
        t.join();
        for (size_t i = 0; i < acc_size; ++i) acc_a[i] += acc_b[i];
    } else {
        vote(0, pts.size(), acc_a);
    }

    HoughBest best;
    for (int ri = 0; ri < nr; ++ri)
        for (int cy = 0; cy < h; ++cy)
            for (int cx = 0; cx < w; ++cx)
                best.consider(acc_a[(static_cast<size_t>(cy) * w + cx) * nr + ri],
                              ri + r_min, cy, cx);
    return {Circle{static_cast<double>(best.cx), static_cast<double>(best.cy),
                   static_cast<double>(best.r)},
            best.score};
}

}  // namespace

HoughCircleResult hough_circle(const EdgeMap& edges, int r_min, int r_max,
                               std::optional<CenterWindow> window) {
    if (r_min < 1 || r_min >= r_max)
        throw ParameterError("hough_circle: need 1 <= r_min < r_max");
    const auto pts = edges.edge_points();
    if (pts.empty()) throw NoEdgesError("hough_circle: empty edge map");

    if (window) {
        CenterWindow win = *window;
        win.x0 = std::max(win.x0, 0);
        win.y0 = std::max(win.y0, 0);
        win.x1 = std::min(win.x1, edges.width() - 1);
        win.y1 = std::min(win.y1, edges.height() - 1);
        if (win.x0 > win.x1 || win.y0 > win.y1)
            throw ParameterError("hough_circle: empty center window");
        return hough_windowed(pts, r_min, r_max, win);
    }
    return hough_full(pts, edges.width(), edges.height(), r_min, r_max);
}

std::optional<Parabola> hough_parabola(const EdgeMap& edges, EyelidRegion region,
                                       const Circle& iris, const Circle& pupil,
                                       const HoughParabolaConfig& cfg) {
    const int w = edges.width(), h = edges.height();
    const bool upper = region == EyelidRegion::Upper;

    // Band between the iris top/bottom and its center; circle boundaries are
    // excluded so the iris rim itself cannot masquerade as a lid.
    const int band_y0 = std::max(0, static_cast<int>(upper ? iris.cy - iris.r : iris.cy));
    const int band_y1 =
        std::min(h - 1, static_cast<int>(upper ? iris.cy : iris.cy + iris.r));
    const int band_x0 = std::max(0, static_cast<int>(iris.cx - iris.r));
    const int band_x1 = std::min(w - 1, static_cast<int>(iris.cx + iris.r));

    std::vector<EdgeMap::Point> pts;
    for (int y = band_y0; y <= band_y1; ++y) {
        for (int x = band_x0; x <= band_x1; ++x) {
            if (!edges.is_edge(x, y)) continue;
            if (std::abs(dist(x, y, iris.cx, iris.cy) - iris.r) <= cfg.boundary_exclusion)
                continue;
            if (std::abs(dist(x, y, pupil.cx, pupil.cy) - pupil.r) <= cfg.boundary_exclusion)
                continue;
            pts.push_back({x, y});
        }
    }
    if (static_cast<int>(pts.size()) < cfg.min_votes) return std::nullopt;

    // Vertex grid.
    const int h0 = static_cast<int>(iris.cx - 0.6 * iris.r);
    const int h1 = static_cast<int>(iris.cx + 0.6 * iris.r);
    const int k0 = band_y0 - 24, k1 = band_y1 + 24;
    const int nh = (h1 - h0) / cfg.vertex_step + 1;
    const int nk = (k1 - k0) / cfg.vertex_step + 1;
    if (nh < 1 || nk < 1) return std::nullopt;

    std::vector<double> a_mags(static_cast<size_t>(cfg.curvature_steps));
    for (int i = 0; i < cfg.curvature_steps; ++i)
        a_mags[static_cast<size_t>(i)] =
            cfg.curvature_min *
            std::pow(cfg.curvature_max / cfg.curvature_min,
                     static_cast<double>(i) / (cfg.curvature_steps - 1));

    struct Best {
        long score = -1;
        Parabola p;
    };

    auto scan_theta = [&](size_t t_begin, size_t t_end, Best& best) {
        std::vector<int> acc(static_cast<size_t>(nh) * nk);
        for (size_t ti = t_begin; ti < t_end; ++ti) {
            const double theta = cfg.thetas[ti];
            const double s = std::sin(theta), c = std::cos(theta);
            for (size_t ai = 0; ai < a_mags.size(); ++ai) {
                const double a = (upper ? -1.0 : 1.0) * a_mags[ai];
                std::fill(acc.begin(), acc.end(), 0);
                for (const auto& p : pts) {
                    for (int hi = 0; hi < nh; ++hi) {
                        const double u = p.x - (h0 + hi * cfg.vertex_step);
                        // Solve eta = a*xi^2 for w = y - k given u = x - h:
                        // (a s^2) w^2 + (2 a u c s - c) w + (a u^2 c^2 + u s) = 0
                        const double A = a * s * s;
                        const double B = 2.0 * a * u * c * s - c;
                        const double C = a * u * u * c * c + u * s;
                        double roots[2];
                        int nroots = 0;
                        if (std::abs(A) < 1e-14) {
                            if (std::abs(B) > 1e-14) roots[nroots++] = -C / B;
                        } else {
                            const double disc = B * B - 4.0 * A * C;
                            if (disc >= 0.0) {
                                const double sq = std::sqrt(disc);
                                roots[nroots++] = (-B + sq) / (2.0 * A);
                                roots[nroots++] = (-B - sq) / (2.0 * A);
                            }
                        }
                        for (int ri = 0; ri < nroots; ++ri) {
                            const double k = p.y - roots[ri];
                            const int ki = static_cast<int>(
                                std::lround((k - k0) / cfg.vertex_step));
                            if (ki >= 0 && ki < nk)
                                ++acc[static_cast<size_t>(hi) * nk + ki];
                        }
                    }
                }
                for (int hi = 0; hi < nh; ++hi) {
                    for (int ki = 0; ki < nk; ++ki) {
                        const long sc = acc[static_cast<size_t>(hi) * nk + ki];
                        if (sc > best.score) {
                            best.score = sc;
                            best.p = Parabola{
                                static_cast<double>(h0 + hi * cfg.vertex_step),
                                static_cast<double>(k0 + ki * cfg.vertex_step), a,
                                theta};
                        }
                    }
                }
            }
        }
    };

    // Theta slices are independent; merge keeps the first (lowest-theta-index)
    // winner on ties, matching the sequential scan order.
    Best best;
    if (cfg.thetas.size() >= 2 && std::thread::hardware_concurrency() > 1) {
        const size_t mid = cfg.thetas.size() / 2;
        Best best_hi;
        std::thread t([&] { scan_theta(mid, cfg.thetas.size(), best_hi); });
        scan_theta(0, mid, best);
        t.join();
        if (best_hi.score > best.score) best = best_hi;
    } else {
        scan_theta(0, cfg.thetas.size(), best);
    }

    if (best.score < cfg.min_votes) return std::nullopt;
    return best.p;
}

namespace {

// Algebraic least-squares circle fit (Kasa) over edge pixels near the Hough
// winner; two reselection rounds. Falls back to the seed if the fit drifts.
Circle refine_circle(const std::vector<EdgeMap::Point>& pts, const Circle& seed,
                     double tol = 1.8) {
    Circle c = seed;
    for (int round = 0; round < 2; ++round) {
        double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
        long n = 0;
        for (const auto& p : pts) {
            if (std::abs(dist(p.x, p.y, c.cx, c.cy) - c.r) > tol) continue;
            const double x = p.x, y = p.y, z = x * x + y * y;
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
            sx += x;
            sy += y;
            sxz += x * z;
            syz += y * z;
            sz += z;
            ++n;
        }
        if (n < 6) return seed;
        // Normal equations for z = 2*cx*x + 2*cy*y + d.
        double m[3][4] = {{2.0 * sxx, 2.0 * sxy, sx, sxz},
                          {2.0 * sxy, 2.0 * syy, sy, syz},
                          {2.0 * sx, 2.0 * sy, static_cast<double>(n), sz}};
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int row = col + 1; row < 3; ++row)
                if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
            if (std::abs(m[piv][col]) < 1e-9) return seed;
            std::swap(m[col], m[piv]);
            for (int row = 0; row < 3; ++row) {
                if (row == col) continue;
                const double f = m[row][col] / m[col][col];
                for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
            }
        }
        const double cx = m[0][3] / m[0][0];
        const double cy = m[1][3] / m[1][1];
        const double d = m[2][3] / m[2][2];
        const double r2 = d + cx * cx + cy * cy;
        if (r2 <= 0.0) return seed;
        c = Circle{cx, cy, std::sqrt(r2)};
    }
    if (dist(c.cx, c.cy, seed.cx, seed.cy) > 2.5 || std::abs(c.r - seed.r) > 2.5)
        return seed;
    return c;
}

}  // namespace

SegmentationResult segment(const GrayImage& img, const SegmentationConfig& cfg) {
    const int w = img.width(), h = img.height();

    EdgeMap circ_edges = canny(img, cfg.canny_low, cfg.canny_high,
                               OrientationBias::Vertical, cfg.gauss_sigma,
                               cfg.gauss_size);
    const auto pts = circ_edges.edge_points();

    const auto pupil_hough = hough_circle(circ_edges, cfg.pupil_r_min, cfg.pupil_r_max);
    Circle pupil = refine_circle(pts, pupil_hough.circle);

    const int slack = cfg.iris_center_slack;
    CenterWindow win{static_cast<int>(pupil.cx) - slack, static_cast<int>(pupil.cx) + slack,
                     static_cast<int>(pupil.cy) - slack, static_cast<int>(pupil.cy) + slack};
    const auto iris_hough = hough_circle(circ_edges, cfg.iris_r_min, cfg.iris_r_max,
                                         CenterWindow{win.x0, win.x1, win.y0, win.y1});
    Circle iris_c = refine_circle(pts, iris_hough.circle);

    if (dist(pupil.cx, pupil.cy, iris_c.cx, iris_c.cy) + pupil.r >= iris_c.r)
        throw SegmentationFailure("segment: pupil not strictly inside iris", pupil,
                                  iris_c);

    EdgeMap lid_edges = canny(img, cfg.canny_low, cfg.canny_high,
                              OrientationBias::Horizontal, cfg.gauss_sigma,
                              cfg.gauss_size);
    const auto upper =
        hough_parabola(lid_edges, EyelidRegion::Upper, iris_c, pupil, cfg.parabola);
    const auto lower =
        hough_parabola(lid_edges, EyelidRegion::Lower, iris_c, pupil, cfg.parabola);

    SegmentationResult res;
    res.pupil = pupil;
    res.iris = iris_c;
    res.upper_eyelid = upper;
    res.lower_eyelid = lower;
    res.mask_width = w;
    res.mask_height = h;
    res.noise_mask.assign(static_cast<size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!iris_c.contains(x, y) || pupil.contains(x, y)) continue;
            if (upper && upper->occludes(x, y)) continue;
            if (lower && lower->occludes(x, y)) continue;
            if (img.at(x, y) < cfg.dark_floor) continue;
            res.noise_mask[static_cast<size_t>(y) * w + x] = 1;
        }
    }
    return res;
}

}  // namespace iris
