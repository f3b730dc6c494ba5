// Scalar reference kernels. These define the exact results every SIMD
// variant must reproduce.

#include "kernels_tables.hpp"

namespace asym::kernels::detail {

namespace {

std::uint64_t sum_u8_scalar(const std::uint8_t* p, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc += p[i];
    return acc;
}

std::uint64_t masked_sum_u8_scalar(const std::uint8_t* p, const std::uint8_t* mask01,
                                   std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc += mask01[i] ? p[i] : 0u;
    return acc;
}

std::uint64_t sum_abs_diff_u8_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                     std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        acc += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    return acc;
}

std::uint64_t sum_sq_diff_u8_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                    std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        acc += static_cast<std::uint64_t>(d * d);
    }
    return acc;
}

void shift_clamp_u8_scalar(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                           int delta) {
    for (std::size_t i = 0; i < n; ++i) {
        int v = static_cast<int>(src[i]) + delta;
        if (v < 0)
            v = 0;
        else if (v > 255)
            v = 255;
        dst[i] = static_cast<std::uint8_t>(v);
    }
}

void channel_sums_rgb_u8_scalar(const std::uint8_t* rgb, std::size_t npix,
                                std::uint64_t out[3]) {
    std::uint64_t r = 0, g = 0, b = 0;
    for (std::size_t i = 0; i < npix; ++i) {
        r += rgb[3 * i + 0];
        g += rgb[3 * i + 1];
        b += rgb[3 * i + 2];
    }
    out[0] = r;
    out[1] = g;
    out[2] = b;
}

void rgb_to_gray_u8_scalar(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t npix) {
    for (std::size_t i = 0; i < npix; ++i) {
        const unsigned v = 299u * rgb[3 * i + 0] + 587u * rgb[3 * i + 1] + 114u * rgb[3 * i + 2];
        gray[i] = static_cast<std::uint8_t>((v + 500u) / 1000u);
    }
}

} // namespace

const Table scalar_table = {
    sum_u8_scalar,         masked_sum_u8_scalar,   sum_abs_diff_u8_scalar,
    sum_sq_diff_u8_scalar, shift_clamp_u8_scalar,  channel_sums_rgb_u8_scalar,
    rgb_to_gray_u8_scalar,
};

} // namespace asym::kernels::detail
