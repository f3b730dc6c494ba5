#include "asym/measures.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

namespace {

void require_scheme_match(const Landmarks& lm, const LandmarkScheme& scheme) {
    if (scheme.n != lm.size())
        raise(errc::shape_mismatch, "landmark count " + std::to_string(lm.size()) +
                                        " does not match scheme n=" + std::to_string(scheme.n));
}

SideSplit split_by_pairs(const Landmarks& lm, const LandmarkScheme& scheme) {
    std::vector<bool> used(lm.size(), false);
    SideSplit out;
    out.pairing = scheme.pairs;
    for (const auto& [li, ri] : scheme.pairs) {
        if (li >= lm.size() || ri >= lm.size())
            raise(errc::invalid_parameter, "mirror pair index out of range");
        if (used[li] || used[ri] || li == ri)
            raise(errc::invalid_parameter, "mirror pairs are not disjoint");
        used[li] = used[ri] = true;
        out.left.points.push_back(lm.points[li]);
        out.right.points.push_back(lm.points[ri]);
    }
    return out;
}

SideSplit split_by_median(const Landmarks& lm, const LandmarkScheme& scheme) {
    const std::size_t n = lm.size();
    if (n % 2 != 0)
        raise(errc::unbalanced_split,
              "median split needs an even point count, got " + std::to_string(n));

    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = lm.points[i].x;
    std::sort(xs.begin(), xs.end());
    const double median = (xs[n / 2 - 1] + xs[n / 2]) / 2.0;

    SideSplit out;
    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lm.points[i].x;
        const bool left = x < median ||
                          (x == median && scheme.tie_rule == LandmarkScheme::Tie::left);
        if (left) {
            left_idx.push_back(i);
            out.left.points.push_back(lm.points[i]);
        } else {
            right_idx.push_back(i);
            out.right.points.push_back(lm.points[i]);
        }
    }
    if (left_idx.size() != right_idx.size())
        raise(errc::unbalanced_split, "median split is " + std::to_string(left_idx.size()) +
                                          "/" + std::to_string(right_idx.size()) +
                                          ", expected 50/50");
    for (std::size_t i = 0; i < left_idx.size(); ++i)
        out.pairing.emplace_back(left_idx[i], right_idx[i]);
    return out;
}

} // namespace

SideSplit split_left_right(const Landmarks& lm, const LandmarkScheme& scheme) {
    require_scheme_match(lm, scheme);
    SideSplit out =
        scheme.by_index_order() ? split_by_median(lm, scheme) : split_by_pairs(lm, scheme);
    out.left.frame_index = lm.frame_index;
    out.right.frame_index = lm.frame_index;
    return out;
}

MeasureOneResult measure_one(const Landmarks& lm, const LandmarkScheme& scheme) {
    const SideSplit split = split_left_right(lm, scheme);
    const Alignment alignment = full_alignment(split.right, split.left, true);
    return {alignment.residual, alignment};
}

double movement_from_neutral(const Landmarks& lm, const Landmarks& neutral, Side side,
                             const LandmarkScheme& scheme) {
    const SideSplit frame_split = split_left_right(lm, scheme);
    const SideSplit neutral_split = split_left_right(neutral, scheme);
    if (frame_split.pairing != neutral_split.pairing)
        raise(errc::shape_mismatch,
              "frame and neutral landmarks split into different index sets");

    const Landmarks& a = side == Side::left ? frame_split.left : frame_split.right;
    const Landmarks& b = side == Side::left ? neutral_split.left : neutral_split.right;
    return full_alignment(a, b, false).residual;
}

double overall_movement(double left, double right) {
    if (left < 0.0 || right < 0.0)
        raise(errc::invalid_parameter, "movement values must be non-negative");
    return (left + right) / 2.0;
}

namespace {

// signed side of the axis: > 0 is the "right" half-plane (the normal is
// oriented toward +x, falling back to +y for horizontal axes)
double axis_side(const SymmetryAxis& axis, double x, double y) {
    double nx, ny;
    if (axis.vertical) {
        nx = 1.0;
        ny = 0.0;
    } else {
        nx = -axis.slope;
        ny = 1.0;
        if (nx < 0.0 || (nx == 0.0 && ny < 0.0)) {
            nx = -nx;
            ny = -ny;
        }
    }
    return (x - axis.through.x) * nx + (y - axis.through.y) * ny;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3)
        return pts;
    auto cross = [](Point o, Point a, Point b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1); // counter-clockwise in a y-up frame
    return hull;
}

bool in_hull(const std::vector<Point>& hull, double x, double y) {
    if (hull.size() < 3)
        return false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point a = hull[i];
        const Point b = hull[(i + 1) % hull.size()];
        const double cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
        if (cross < -1e-9)
            return false;
    }
    return true;
}

} // namespace

PixelAsymmetry measure_two(const GrayImage& frame, const Landmarks& lm,
                           const LandmarkScheme& scheme, const MeasureTwoOptions& opts) {
    if (frame.width <= 0 || frame.height <= 0)
        raise(errc::invalid_input, "empty frame");
    for (const Point& p : lm.points)
        if (!(p.x >= 0.0) || !(p.y >= 0.0) || !(p.x <= frame.width - 1.0) ||
            !(p.y <= frame.height - 1.0))
            raise(errc::invalid_input, "landmark outside frame bounds");

    const SideSplit split = split_left_right(lm, scheme);
    const Alignment alignment = full_alignment(split.right, split.left, true);
    if (!alignment.orthogonal.is_reflection())
        raise(errc::not_a_reflection,
              "optimal orthogonal transform is a rotation; no symmetry axis");

    const SymmetryAxis axis = axis_from_orthogonal(alignment.orthogonal, centroid(lm));
    const std::vector<Point> hull = convex_hull(lm.points);

    GrayImage left_img, refl_img;
    for (GrayImage* img : {&left_img, &refl_img}) {
        img->width = frame.width;
        img->height = frame.height;
        img->pixels.assign(frame.pixel_count(), 0);
        img->mask.assign(frame.pixel_count(), 0);
    }

    double min_x = lm.points[0].x, max_x = lm.points[0].x;
    double min_y = lm.points[0].y, max_y = lm.points[0].y;
    for (const Point& p : lm.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
    const int x1 = std::min(frame.width - 1, static_cast<int>(std::ceil(max_x)));
    const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
    const int y1 = std::min(frame.height - 1, static_cast<int>(std::ceil(max_y)));

    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double fx = x, fy = y;
            if (!in_hull(hull, fx, fy) || axis_side(axis, fx, fy) > 0.0)
                continue;
            const std::size_t i = static_cast<std::size_t>(y) * frame.width + x;
            if (frame.valid_at(x, y)) {
                left_img.pixels[i] = frame.at(x, y);
                left_img.mask[i] = 1;
            }
            const Point q = reflect_point({fx, fy}, axis);
            if (axis_side(axis, q.x, q.y) > 0.0 && in_hull(hull, q.x, q.y)) {
                const std::optional<double> v = sample_bilinear(frame, q.x, q.y);
                if (v) {
                    refl_img.pixels[i] = static_cast<std::uint8_t>(std::lround(*v));
                    refl_img.mask[i] = 1;
                }
            }
        }
    }

    if (opts.normalize_brightness)
        refl_img = brightness_normalize(refl_img, left_img);

    PixelAsymmetry out;
    for (std::size_t i = 0; i < frame.pixel_count(); ++i) {
        if (left_img.mask[i] && refl_img.mask[i]) {
            const int d = std::abs(static_cast<int>(left_img.pixels[i]) -
                                   static_cast<int>(refl_img.pixels[i]));
            ++out.histogram[static_cast<std::size_t>(d)];
            ++out.overlap_pixel_count;
        }
    }
    if (out.overlap_pixel_count == 0)
        raise(errc::empty_region, "left and reflected-right regions do not overlap");

    std::uint64_t weighted = 0;
    for (int v = 0; v < 256; ++v)
        weighted += static_cast<std::uint64_t>(v) * out.histogram[static_cast<std::size_t>(v)];
    out.mean_abs_diff =
        static_cast<double>(weighted) / static_cast<double>(out.overlap_pixel_count);

    // lower median: smallest value whose cumulative count reaches ceil(N/2)
    const std::uint64_t target = (out.overlap_pixel_count + 1) / 2;
    std::uint64_t cum = 0;
    for (int v = 0; v < 256; ++v) {
        cum += out.histogram[static_cast<std::size_t>(v)];
        if (cum >= target) {
            out.median_abs_diff = v;
            break;
        }
    }
    return out;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        raise(errc::invalid_parameter, "series lengths differ");
    if (xs.size() < 2)
        raise(errc::invalid_parameter, "correlation needs at least 2 samples");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        raise(errc::undefined_correlation, "a series is constant");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

} // namespace asym
