// Greedy tolerance-scan keyframe selection: a frame becomes the new base
// (and is selected) whenever its Euclidean distance from the current base
// exceeds the tolerance.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "asym/error.hpp"

namespace asym {

/// One frame flattened to its raw byte values (3*w*h for RGB frames).
struct FrameVector {
    long frame_index = 0;
    std::vector<std::uint8_t> values;
};

struct KeyframeSelection {
    double tolerance = 0.0;
    std::vector<long> selected; // scan positions, ascending, starts at 0
};

/// Euclidean distance between two flattened frames, accumulated in wide
/// integers before the square root.
double frame_distance(const FrameVector& a, const FrameVector& b);

/// Streaming selection: `next` yields frames in order until nullopt.
/// Only the current base frame is retained.
KeyframeSelection select_keyframes(const std::function<std::optional<FrameVector>()>& next,
                                   double tolerance);

KeyframeSelection select_keyframes(const std::vector<FrameVector>& frames, double tolerance);

} // namespace asym
