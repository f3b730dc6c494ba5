#include "asym/geometry.hpp"

#include <cmath>

namespace asym {

namespace {

constexpr double kDegenerateNorm = 1e-150;
constexpr double kZeroCovariance = 1e-12;

} // namespace

Mat2 Mat2::rotation(double radians) {
    const double c = std::cos(radians), s = std::sin(radians);
    return {c, s, -s, c};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
}

Svd2 svd2(const Mat2& m) {
    // Two-rotation closed form. With E,H carrying the rotational part and
    // F,G the deviatoric part, the singular values are q+r and q-r and the
    // factor angles come out of the two atan2 terms.
    const double e = (m.a00 + m.a11) / 2.0;
    const double f = (m.a00 - m.a11) / 2.0;
    const double g = (m.a10 + m.a01) / 2.0;
    const double h = (m.a10 - m.a01) / 2.0;

    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    double s0 = q + r;
    double s1 = q - r;

    const double a1 = std::atan2(g, f);
    const double a2 = std::atan2(h, e);
    const double ang_u = (a1 + a2) / 2.0;
    const double ang_v = (a1 - a2) / 2.0;

    Mat2 u{std::cos(ang_u), -std::sin(ang_u), std::sin(ang_u), std::cos(ang_u)};
    Mat2 v{std::cos(ang_v), -std::sin(ang_v), std::sin(ang_v), std::cos(ang_v)};

    if (s1 < 0.0) {
        s1 = -s1;
        u.a01 = -u.a01;
        u.a11 = -u.a11;
    }
    return {u, s0, s1, v};
}

Point centroid(const Landmarks& shape) {
    if (shape.points.empty())
        raise(errc::invalid_shape, "centroid of an empty shape");
    double sx = 0.0, sy = 0.0;
    for (const Point& p : shape.points) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(shape.points.size());
    return {sx / n, sy / n};
}

Landmarks center(const Landmarks& shape) {
    const Point c = centroid(shape);
    Landmarks out = shape;
    for (Point& p : out.points)
        p = p - c;
    return out;
}

Landmarks unit_scale(const Landmarks& shape) {
    double ss = 0.0;
    for (const Point& p : shape.points)
        ss += p.x * p.x + p.y * p.y;
    const double norm = std::sqrt(ss);
    if (!(norm > kDegenerateNorm))
        raise(errc::degenerate_shape, "shape has zero scale");
    Landmarks out = shape;
    for (Point& p : out.points)
        p = p * (1.0 / norm);
    return out;
}

double procrustes_distance(const Landmarks& a, const Landmarks& b) {
    if (a.size() != b.size())
        raise(errc::shape_mismatch, "point counts differ: " + std::to_string(a.size()) +
                                        " vs " + std::to_string(b.size()));
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dx = a.points[i].x - b.points[i].x;
        const double dy = a.points[i].y - b.points[i].y;
        ss += dx * dx + dy * dy;
    }
    return std::sqrt(ss);
}

Landmarks transform_shape(const Landmarks& shape, const Mat2& m, Point t) {
    Landmarks out = shape;
    for (Point& p : out.points)
        p = m.apply(p) + t;
    return out;
}

namespace {

// Cross-covariance B^T A of two n-by-2 row matrices.
Mat2 cross_matrix(const Landmarks& a, const Landmarks& b) {
    Mat2 m{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point& pa = a.points[i];
        const Point& pb = b.points[i];
        m.a00 += pb.x * pa.x;
        m.a01 += pb.x * pa.y;
        m.a10 += pb.y * pa.x;
        m.a11 += pb.y * pa.y;
    }
    return m;
}

double frobenius(const Mat2& m) {
    return std::sqrt(m.a00 * m.a00 + m.a01 * m.a01 + m.a10 * m.a10 + m.a11 * m.a11);
}

ProcrustesSolution procrustes_impl(const Landmarks& a, const Landmarks& b, bool allow_reflection) {
    if (a.size() != b.size())
        raise(errc::shape_mismatch, "point counts differ: " + std::to_string(a.size()) +
                                        " vs " + std::to_string(b.size()));
    if (a.points.empty())
        raise(errc::invalid_shape, "empty shape");

    const Mat2 m = cross_matrix(a, b);
    if (frobenius(m) < kZeroCovariance)
        return {OrthogonalTransform2{Mat2::identity()}, true};

    // With svd2(B^T A) = P * diag(s) * Q^T, the minimizer of ||B - A*R||
    // over orthogonal R (row convention) is R = Q * P^T.
    const Svd2 d = svd2(m);
    Mat2 r = d.v * d.u.transposed();
    if (!allow_reflection && r.det() < 0.0) {
        // Flip the sign paired with the smallest singular value: negate the
        // second column of Q before forming Q * P^T.
        Mat2 q = d.v;
        q.a01 = -q.a01;
        q.a11 = -q.a11;
        r = q * d.u.transposed();
    }
    return {OrthogonalTransform2{r}, false};
}

} // namespace

ProcrustesSolution orthogonal_procrustes(const Landmarks& a, const Landmarks& b) {
    return procrustes_impl(a, b, true);
}

ProcrustesSolution rotation_procrustes(const Landmarks& a, const Landmarks& b) {
    return procrustes_impl(a, b, false);
}

Alignment full_alignment(const Landmarks& src, const Landmarks& dst, bool allow_reflection) {
    if (src.size() != dst.size())
        raise(errc::shape_mismatch, "point counts differ: " + std::to_string(src.size()) +
                                        " vs " + std::to_string(dst.size()));
    const Point c_src = centroid(src);
    const Point c_dst = centroid(dst);

    const Landmarks a = unit_scale(center(src));
    const Landmarks b = unit_scale(center(dst));

    const ProcrustesSolution sol =
        allow_reflection ? orthogonal_procrustes(a, b) : rotation_procrustes(a, b);

    const Point t = c_dst - sol.transform.matrix.apply(c_src);
    const double residual = procrustes_distance(dst, transform_shape(src, sol.transform.matrix, t));

    Alignment out;
    out.orthogonal = sol.transform;
    out.translation = t;
    out.residual = residual;
    out.degenerate = sol.degenerate;
    return out;
}

Point reflect_point(Point p, const SymmetryAxis& axis) {
    if (axis.vertical)
        return {2.0 * axis.through.x - p.x, p.y};
    const double m = axis.slope;
    const double x = p.x - axis.through.x;
    const double y = p.y - axis.through.y;
    const double d = 1.0 + m * m;
    return {(2.0 * m * y - (m * m - 1.0) * x) / d + axis.through.x,
            ((m * m - 1.0) * y + 2.0 * m * x) / d + axis.through.y};
}

SymmetryAxis axis_from_orthogonal(const OrthogonalTransform2& t, Point through) {
    if (!t.is_reflection())
        raise(errc::not_a_reflection, "orthogonal transform has determinant +1");
    // A det -1 orthogonal matrix is symmetric and can be written
    // [[-cos t, sin t], [sin t, cos t]]; the fixed line of the reflection
    // has slope cos(t/2)/sin(t/2).
    const double c = -t.matrix.a00;
    const double s = (t.matrix.a01 + t.matrix.a10) / 2.0;
    const double theta = std::atan2(s, c);
    const double half_sin = std::sin(theta / 2.0);
    const double half_cos = std::cos(theta / 2.0);

    SymmetryAxis axis;
    axis.through = through;
    if (std::abs(half_sin) < 1e-12) {
        axis.vertical = true;
    } else {
        axis.slope = half_cos / half_sin;
    }
    return axis;
}

} // namespace asym
