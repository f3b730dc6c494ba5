#include "asym/keyframes.hpp"

#include <cmath>

#include "asym/kernels.hpp"

namespace asym {

double frame_distance(const FrameVector& a, const FrameVector& b) {
    if (a.values.size() != b.values.size())
        raise(errc::image_mismatch, "frame vector lengths differ: " +
                                        std::to_string(a.values.size()) + " vs " +
                                        std::to_string(b.values.size()));
    const std::uint64_t ss =
        kernels::sum_sq_diff_u8(a.values.data(), b.values.data(), a.values.size());
    return std::sqrt(static_cast<double>(ss));
}

KeyframeSelection select_keyframes(const std::function<std::optional<FrameVector>()>& next,
                                   double tolerance) {
    if (tolerance < 0.0)
        raise(errc::invalid_input, "tolerance must be non-negative");

    std::optional<FrameVector> base = next();
    if (!base)
        raise(errc::invalid_input, "no frames");

    KeyframeSelection out;
    out.tolerance = tolerance;
    out.selected.push_back(0);

    long pos = 0;
    while (std::optional<FrameVector> frame = next()) {
        ++pos;
        if (frame_distance(*base, *frame) > tolerance) {
            out.selected.push_back(pos);
            base = std::move(frame);
        }
    }
    return out;
}

KeyframeSelection select_keyframes(const std::vector<FrameVector>& frames, double tolerance) {
    std::size_t i = 0;
    return select_keyframes(
        [&]() -> std::optional<FrameVector> {
            if (i >= frames.size())
                return std::nullopt;
            return frames[i++];
        },
        tolerance);
}

} // namespace asym
