// 2D shape arithmetic: centering, normalization, Procrustes solutions,
// line reflection and symmetry-axis extraction.
//
// Convention used throughout: points are rows of an n-by-2 matrix and
// linear transforms apply on the right, p' = p * M.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "asym/error.hpp"

namespace asym {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }

/// One frame's ordered landmark set. Index i is a named anatomical point,
/// so ordering is significant.
struct Landmarks {
    std::vector<Point> points;
    std::optional<long> frame_index;

    std::size_t size() const { return points.size(); }
};

struct Mat2 {
    // entries [row][col] flattened: a00 a01 / a10 a11
    double a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 1.0;

    static Mat2 identity() { return {}; }
    // Rotation by `radians` acting on row vectors (p' = p * M is CCW).
    static Mat2 rotation(double radians);

    Mat2 transposed() const { return {a00, a10, a01, a11}; }
    double det() const { return a00 * a11 - a01 * a10; }
    Mat2 operator*(const Mat2& o) const;
    // Row-vector action p * M.
    Point apply(Point p) const {
        return {p.x * a00 + p.y * a10, p.x * a01 + p.y * a11};
    }
};

/// Closed-form SVD of a 2x2 matrix, m = u * diag(s0, s1) * v^T with
/// s0 >= s1 >= 0 and u, v orthogonal (possibly reflections).
struct Svd2 {
    Mat2 u;
    double s0 = 0.0;
    double s1 = 0.0;
    Mat2 v;
};
Svd2 svd2(const Mat2& m);

/// Orthogonal 2x2 transform: a rotation (det +1) or reflection (det -1).
struct OrthogonalTransform2 {
    Mat2 matrix;

    int determinant_sign() const { return matrix.det() < 0.0 ? -1 : 1; }
    bool is_reflection() const { return determinant_sign() < 0; }
};

/// Result of aligning one shape onto another: orthogonal part, translation
/// and the residual Procrustes distance in the source units.
struct Alignment {
    OrthogonalTransform2 orthogonal;
    Point translation;
    double residual = 0.0;
    bool degenerate = false;

    Point apply(Point p) const { return orthogonal.matrix.apply(p) + translation; }
};

/// A line of symmetry: passes through `through`, with slope `slope`
/// unless `vertical` is set.
struct SymmetryAxis {
    Point through;
    bool vertical = false;
    double slope = 0.0;
};

Point centroid(const Landmarks& shape);

/// Translate so the centroid lands on the origin.
Landmarks center(const Landmarks& shape);

/// Scale so the sum of squared coordinates is 1.
Landmarks unit_scale(const Landmarks& shape);

/// sqrt of the summed squared coordinate differences between paired points.
double procrustes_distance(const Landmarks& a, const Landmarks& b);

Landmarks transform_shape(const Landmarks& shape, const Mat2& m, Point t = {0.0, 0.0});

struct ProcrustesSolution {
    OrthogonalTransform2 transform;
    bool degenerate = false; // cross-covariance was numerically zero; identity returned
};

/// Orthogonal matrix minimizing ||B - A*M|| over rotations and reflections.
/// Expects both shapes centered and unit-scaled.
ProcrustesSolution orthogonal_procrustes(const Landmarks& a, const Landmarks& b);

/// As orthogonal_procrustes but restricted to proper rotations (det +1).
ProcrustesSolution rotation_procrustes(const Landmarks& a, const Landmarks& b);

/// Full alignment of src onto dst: the orthogonal factor is solved on
/// centered, unit-scaled copies; the translation and the residual are in
/// the original pixel coordinates. No scaling is ever applied.
Alignment full_alignment(const Landmarks& src, const Landmarks& dst, bool allow_reflection);

Point reflect_point(Point p, const SymmetryAxis& axis);

/// Recover the symmetry axis whose reflection (about `through`) reproduces
/// the action of a det -1 orthogonal transform on centered coordinates.
SymmetryAxis axis_from_orthogonal(const OrthogonalTransform2& t, Point through);

} // namespace asym
