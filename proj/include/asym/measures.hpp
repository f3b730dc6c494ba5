// Frame-level asymmetry and movement measures: left/right landmark split,
// shape asymmetry (reflect-and-align residual), pixel asymmetry across the
// inferred symmetry axis, movement from a neutral frame, and Pearson
// correlation.

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "asym/geometry.hpp"
#include "asym/image.hpp"

namespace asym {

/// How a landmark set divides into mirrored halves.
struct LandmarkScheme {
    enum class Tie { left, right };

    std::size_t n = 0;
    // Explicit (left_index, right_index) mirror pairs. Empty = split by the
    // median of the x coordinates, pairing by ascending index in each half.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    Tie tie_rule = Tie::left;

    bool by_index_order() const { return pairs.empty(); }
};

struct SideSplit {
    Landmarks left;
    Landmarks right;
    // original indices: pairing[i] = (left source index, right source index)
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

struct FrameMetrics {
    long frame_index = 0;
    double asymmetry = 0.0;
    double left_movement = 0.0;
    double right_movement = 0.0;
    double overall_movement = 0.0;
    bool degenerate = false;
};

struct PixelAsymmetry {
    double mean_abs_diff = 0.0;
    int median_abs_diff = 0;
    std::array<std::uint64_t, 256> histogram{};
    std::uint64_t overlap_pixel_count = 0;
};

struct MeasureTwoOptions {
    bool normalize_brightness = true;
};

enum class Side { left, right };

SideSplit split_left_right(const Landmarks& lm, const LandmarkScheme& scheme);

struct MeasureOneResult {
    double asymmetry = 0.0;
    Alignment alignment; // right side onto left side, reflection allowed
};

/// Shape-only asymmetry: residual distance after reflecting/rotating/
/// translating the right-side points onto the left-side points.
MeasureOneResult measure_one(const Landmarks& lm, const LandmarkScheme& scheme);

/// Rotation+translation-compensated residual between one side of `lm` and
/// the same side of the designated neutral frame.
double movement_from_neutral(const Landmarks& lm, const Landmarks& neutral, Side side,
                             const LandmarkScheme& scheme);

double overall_movement(double left, double right);

/// Pixel asymmetry: reflect the right hemiface across the inferred
/// symmetry axis, brightness-normalize it to the left hemiface, then
/// histogram the absolute grayscale differences over the overlap.
PixelAsymmetry measure_two(const GrayImage& frame, const Landmarks& lm,
                           const LandmarkScheme& scheme, const MeasureTwoOptions& opts = {});

/// Sample Pearson correlation, clamped to [-1, 1].
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace asym
