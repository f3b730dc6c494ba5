// Plane-projective transforms: normalized DLT estimation, inversion and
// inverse-mapping perspective warps with bilinear sampling.

#pragma once

#include <array>
#include <vector>

#include "asym/geometry.hpp"
#include "asym/image.hpp"

namespace asym {

/// 3x3 projective matrix acting on homogeneous column vectors (x, y, 1)^T.
/// Normalized so h22 is 1 when nonzero, otherwise to unit Frobenius norm.
struct Homography {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    Point apply(Point p) const;
    double det() const;
};

/// Normalized DLT over >= 4 correspondences; least squares for > 4.
Homography estimate_homography(const std::vector<Point>& src, const std::vector<Point>& dst);

Homography invert_homography(const Homography& h);

/// Inverse mapping: each destination pixel samples the source at
/// H^-1 (x, y, 1). Samples falling outside the source come back black and
/// mask-invalid.
GrayImage warp_perspective(const GrayImage& img, const Homography& h);
RgbImage warp_perspective(const RgbImage& img, const Homography& h);

} // namespace asym
