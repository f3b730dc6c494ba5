#include "asym/homography.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace asym {

namespace {

constexpr double kSingularDet = 1e-12;

Eigen::Matrix3d to_eigen(const Homography& h) {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m(r, c) = h.m[r][c];
    return m;
}

Homography normalized(Eigen::Matrix3d m) {
    const double h22 = m(2, 2);
    if (std::abs(h22) > 1e-12) {
        m /= h22;
    } else {
        m /= m.norm();
    }
    Homography out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.m[r][c] = m(r, c);
    if (std::abs(out.det()) <= kSingularDet)
        raise(errc::degenerate_configuration, "estimated homography is singular");
    return out;
}

// Hartley conditioning: centroid to origin, mean radius sqrt(2).
Eigen::Matrix3d conditioning_transform(const std::vector<Point>& pts) {
    double cx = 0, cy = 0;
    for (const Point& p : pts) {
        cx += p.x;
        cy += p.y;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    double mean_dist = 0;
    for (const Point& p : pts)
        mean_dist += std::hypot(p.x - cx, p.y - cy);
    mean_dist /= static_cast<double>(pts.size());
    const double s = mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;

    Eigen::Matrix3d t;
    t << s, 0, -s * cx, 0, s, -s * cy, 0, 0, 1;
    return t;
}

bool three_collinear(Point a, Point b, Point c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y),
                                   std::abs(c.x - a.x), std::abs(c.y - a.y), 1.0});
    return std::abs(cross) < 1e-9 * scale * scale;
}

} // namespace

Point Homography::apply(Point p) const {
    const double w = m[2][0] * p.x + m[2][1] * p.y + m[2][2];
    return {(m[0][0] * p.x + m[0][1] * p.y + m[0][2]) / w,
            (m[1][0] * p.x + m[1][1] * p.y + m[1][2]) / w};
}

double Homography::det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Homography estimate_homography(const std::vector<Point>& src, const std::vector<Point>& dst) {
    if (src.size() != dst.size())
        raise(errc::shape_mismatch, "correspondence counts differ");
    const std::size_t n = src.size();
    if (n < 4)
        raise(errc::too_few_points, "homography needs at least 4 correspondences, got " +
                                        std::to_string(n));
    if (n == 4) {
        for (std::size_t skip = 0; skip < 4; ++skip) {
            Point tri[3];
            int k = 0;
            for (std::size_t i = 0; i < 4; ++i)
                if (i != skip)
                    tri[k++] = src[i];
            if (three_collinear(tri[0], tri[1], tri[2]))
                raise(errc::degenerate_configuration, "3 of the 4 source points are collinear");
        }
    }

    const Eigen::Matrix3d t_src = conditioning_transform(src);
    const Eigen::Matrix3d t_dst = conditioning_transform(dst);

    Eigen::MatrixXd a(2 * n, 9);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d ps = t_src * Eigen::Vector3d(src[i].x, src[i].y, 1.0);
        const Eigen::Vector3d pd = t_dst * Eigen::Vector3d(dst[i].x, dst[i].y, 1.0);
        const double x = ps(0), y = ps(1);
        const double u = pd(0), v = pd(1);
        a.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
        a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    // A rank below 8 means the solution is not unique.
    const auto& sv = svd.singularValues();
    if (sv(7) < 1e-9 * sv(0))
        raise(errc::degenerate_configuration, "correspondences do not determine a homography");

    const Eigen::VectorXd h = svd.matrixV().col(8);
    Eigen::Matrix3d hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

    return normalized(t_dst.inverse() * hn * t_src);
}

Homography invert_homography(const Homography& h) {
    const Eigen::Matrix3d m = to_eigen(h);
    if (std::abs(m.determinant()) <= kSingularDet)
        raise(errc::singular_homography, "homography is not invertible");
    Eigen::Matrix3d inv = m.inverse();
    const double h22 = inv(2, 2);
    if (std::abs(h22) > 1e-12)
        inv /= h22;
    else
        inv /= inv.norm();
    Homography out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.m[r][c] = inv(r, c);
    return out;
}

GrayImage warp_perspective(const GrayImage& img, const Homography& h) {
    const Homography hinv = invert_homography(h);
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.assign(img.pixel_count(), 0);
    out.mask.assign(img.pixel_count(), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const Point s = hinv.apply({static_cast<double>(x), static_cast<double>(y)});
            const std::optional<double> v = sample_bilinear(img, s.x, s.y);
            if (v) {
                const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
                out.pixels[i] = static_cast<std::uint8_t>(std::lround(*v));
                out.mask[i] = 1;
            }
        }
    }
    return out;
}

RgbImage warp_perspective(const RgbImage& img, const Homography& h) {
    const Homography hinv = invert_homography(h);

    // split once, then run three channel warps through the gray sampler
    GrayImage ch[3];
    for (int c = 0; c < 3; ++c) {
        ch[c].width = img.width;
        ch[c].height = img.height;
        ch[c].pixels.resize(img.pixel_count());
    }
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        ch[0].pixels[i] = img.pixels[3 * i];
        ch[1].pixels[i] = img.pixels[3 * i + 1];
        ch[2].pixels[i] = img.pixels[3 * i + 2];
    }

    RgbImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.assign(img.pixels.size(), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const Point s = hinv.apply({static_cast<double>(x), static_cast<double>(y)});
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            for (int c = 0; c < 3; ++c) {
                const std::optional<double> v = sample_bilinear(ch[c], s.x, s.y);
                if (v)
                    out.pixels[3 * i + c] = static_cast<std::uint8_t>(std::lround(*v));
            }
        }
    }
    return out;
}

} // namespace asym
