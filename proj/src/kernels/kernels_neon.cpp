// NEON variants for aarch64. The interleaved-RGB kernels stay on the
// scalar path; the flat reductions and the shift are vectorized.

#include "kernels_tables.hpp"

#if ASYM_KERNELS_ARM

#include <arm_neon.h>

namespace asym::kernels::detail {

namespace {

std::uint64_t sum_u8_neon(const std::uint8_t* p, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
        total += vaddlvq_u8(vld1q_u8(p + i));
    for (; i < n; ++i)
        total += p[i];
    return total;
}

std::uint64_t masked_sum_u8_neon(const std::uint8_t* p, const std::uint8_t* mask01,
                                 std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t m = vld1q_u8(mask01 + i);
        const uint8x16_t keep = vtstq_u8(m, m); // 0xFF where mask nonzero
        total += vaddlvq_u8(vandq_u8(vld1q_u8(p + i), keep));
    }
    for (; i < n; ++i)
        total += mask01[i] ? p[i] : 0u;
    return total;
}

std::uint64_t sum_abs_diff_u8_neon(const std::uint8_t* a, const std::uint8_t* b,
                                   std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
        total += vaddlvq_u8(vabdq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
    for (; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        total += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    return total;
}

std::uint64_t sum_sq_diff_u8_neon(const std::uint8_t* a, const std::uint8_t* b,
                                  std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t d = vabdq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
        const uint8x8_t lo = vget_low_u8(d);
        const uint8x8_t hi = vget_high_u8(d);
        total += vaddlvq_u16(vmull_u8(lo, lo));
        total += vaddlvq_u16(vmull_u8(hi, hi));
    }
    for (; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        total += static_cast<std::uint64_t>(d * d);
    }
    return total;
}

void shift_clamp_u8_neon(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                         int delta) {
    const bool add = delta >= 0;
    const uint8x16_t vd = vdupq_n_u8(static_cast<std::uint8_t>(add ? delta : -delta));
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t v = vld1q_u8(src + i);
        vst1q_u8(dst + i, add ? vqaddq_u8(v, vd) : vqsubq_u8(v, vd));
    }
    for (; i < n; ++i) {
        int v = static_cast<int>(src[i]) + delta;
        if (v < 0)
            v = 0;
        else if (v > 255)
            v = 255;
        dst[i] = static_cast<std::uint8_t>(v);
    }
}

} // namespace

const Table neon_table = {
    sum_u8_neon,
    masked_sum_u8_neon,
    sum_abs_diff_u8_neon,
    sum_sq_diff_u8_neon,
    shift_clamp_u8_neon,
    scalar_table.channel_sums_rgb_u8,
    scalar_table.rgb_to_gray_u8,
};

} // namespace asym::kernels::detail

#endif // ASYM_KERNELS_ARM
