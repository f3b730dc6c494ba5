// AVX2 variants of the byte kernels. Bit-identical to the scalar table;
// only compiled on x86-64 and only dispatched after a cpuid check.

#include "kernels_tables.hpp"

#if ASYM_KERNELS_X86

#include <immintrin.h>

namespace asym::kernels::detail {

namespace {

inline std::uint64_t hsum_epi64(__m256i v) {
    const __m128i lo = _mm256_castsi256_si128(v);
    const __m128i hi = _mm256_extracti128_si256(v, 1);
    const __m128i s = _mm_add_epi64(lo, hi);
    return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
           static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

std::uint64_t sum_u8_avx2(const std::uint8_t* p, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    std::uint64_t total = hsum_epi64(acc);
    for (; i < n; ++i)
        total += p[i];
    return total;
}

std::uint64_t masked_sum_u8_avx2(const std::uint8_t* p, const std::uint8_t* mask01,
                                 std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask01 + i));
        const __m256i is_zero = _mm256_cmpeq_epi8(m, zero);
        const __m256i kept = _mm256_andnot_si256(is_zero, v);
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(kept, zero));
    }
    std::uint64_t total = hsum_epi64(acc);
    for (; i < n; ++i)
        total += mask01[i] ? p[i] : 0u;
    return total;
}

std::uint64_t sum_abs_diff_u8_avx2(const std::uint8_t* a, const std::uint8_t* b,
                                   std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(va, vb));
    }
    std::uint64_t total = hsum_epi64(acc);
    for (; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        total += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    return total;
}

std::uint64_t sum_sq_diff_u8_avx2(const std::uint8_t* a, const std::uint8_t* b,
                                  std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc64 = zero;
    __m256i acc32 = zero;
    std::size_t i = 0;
    std::size_t pending = 0; // 32-bit lanes hold at most 130050 per step; drain before overflow
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i d = _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
        const __m256i lo = _mm256_unpacklo_epi8(d, zero);
        const __m256i hi = _mm256_unpackhi_epi8(d, zero);
        acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(lo, lo));
        acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(hi, hi));
        // each step adds at most 2*130050 per lane; 4096 steps stay well below 2^31
        if (++pending == 4096) {
            acc64 = _mm256_add_epi64(acc64, _mm256_unpacklo_epi32(acc32, zero));
            acc64 = _mm256_add_epi64(acc64, _mm256_unpackhi_epi32(acc32, zero));
            acc32 = zero;
            pending = 0;
        }
    }
    acc64 = _mm256_add_epi64(acc64, _mm256_unpacklo_epi32(acc32, zero));
    acc64 = _mm256_add_epi64(acc64, _mm256_unpackhi_epi32(acc32, zero));
    std::uint64_t total = hsum_epi64(acc64);
    for (; i < n; ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        total += static_cast<std::uint64_t>(d * d);
    }
    return total;
}

void shift_clamp_u8_avx2(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                         int delta) {
    const bool add = delta >= 0;
    const std::uint8_t mag = static_cast<std::uint8_t>(add ? delta : -delta);
    const __m256i vd = _mm256_set1_epi8(static_cast<char>(mag));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i r = add ? _mm256_adds_epu8(v, vd) : _mm256_subs_epu8(v, vd);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
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

// 96-byte blocks (32 pixels) with per-register channel masks: byte 32k+j of
// a block carries channel (32k+j) mod 3.
struct ChannelMasks {
    __m256i m[3][3]; // [register][channel]
    ChannelMasks() {
        alignas(32) std::uint8_t bytes[3][3][32];
        for (int reg = 0; reg < 3; ++reg)
            for (int ch = 0; ch < 3; ++ch)
                for (int j = 0; j < 32; ++j)
                    bytes[reg][ch][j] = ((32 * reg + j) % 3 == ch) ? 0xFF : 0x00;
        for (int reg = 0; reg < 3; ++reg)
            for (int ch = 0; ch < 3; ++ch)
                m[reg][ch] = _mm256_load_si256(reinterpret_cast<const __m256i*>(bytes[reg][ch]));
    }
};

void channel_sums_rgb_u8_avx2(const std::uint8_t* rgb, std::size_t npix,
                              std::uint64_t out[3]) {
    static const ChannelMasks masks;
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc[3] = {zero, zero, zero};
    std::size_t pix = 0;
    for (; pix + 32 <= npix; pix += 32) {
        const std::uint8_t* base = rgb + 3 * pix;
        for (int reg = 0; reg < 3; ++reg) {
            const __m256i v =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + 32 * reg));
            for (int ch = 0; ch < 3; ++ch) {
                const __m256i kept = _mm256_and_si256(v, masks.m[reg][ch]);
                acc[ch] = _mm256_add_epi64(acc[ch], _mm256_sad_epu8(kept, zero));
            }
        }
    }
    std::uint64_t r = hsum_epi64(acc[0]);
    std::uint64_t g = hsum_epi64(acc[1]);
    std::uint64_t b = hsum_epi64(acc[2]);
    for (; pix < npix; ++pix) {
        r += rgb[3 * pix + 0];
        g += rgb[3 * pix + 1];
        b += rgb[3 * pix + 2];
    }
    out[0] = r;
    out[1] = g;
    out[2] = b;
}

// gray = (299 r + 587 g + 114 b + 500) / 1000, computed as x -> (x>>3)*67109 >> 23
// which is exact over the reachable range [0, 255500].
void rgb_to_gray_u8_avx2(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t npix) {
    const __m256i shuf_a = _mm256_setr_epi8(
        0, -1, 1, -1, 2, -1, -1, -1, 3, -1, 4, -1, 5, -1, -1, -1,
        0, -1, 1, -1, 2, -1, -1, -1, 3, -1, 4, -1, 5, -1, -1, -1);
    const __m256i shuf_b = _mm256_setr_epi8(
        6, -1, 7, -1, 8, -1, -1, -1, 9, -1, 10, -1, 11, -1, -1, -1,
        6, -1, 7, -1, 8, -1, -1, -1, 9, -1, 10, -1, 11, -1, -1, -1);
    const __m256i coeff = _mm256_setr_epi16(299, 587, 114, 0, 299, 587, 114, 0,
                                            299, 587, 114, 0, 299, 587, 114, 0);
    const __m256i bias = _mm256_set1_epi32(500);
    const __m256i magic = _mm256_set1_epi32(67109);
    const __m256i pack_bytes = _mm256_setr_epi8(
        0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,
        0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m256i lane_pick = _mm256_setr_epi32(0, 4, 0, 0, 0, 0, 0, 0);

    std::size_t pix = 0;
    // Each step consumes 8 pixels via two 16-byte loads (offsets 0 and 12);
    // the second load reads 4 bytes past the 24 consumed, hence the guard.
    while (pix + 8 <= npix && 3 * pix + 28 <= 3 * npix) {
        const std::uint8_t* base = rgb + 3 * pix;
        const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(base));
        const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(base + 12));
        const __m256i v = _mm256_set_m128i(hi, lo);

        const __m256i s_a = _mm256_madd_epi16(_mm256_shuffle_epi8(v, shuf_a), coeff);
        const __m256i s_b = _mm256_madd_epi16(_mm256_shuffle_epi8(v, shuf_b), coeff);
        __m256i num = _mm256_hadd_epi32(s_a, s_b);
        num = _mm256_add_epi32(num, bias);
        const __m256i q = _mm256_srli_epi32(
            _mm256_mullo_epi32(_mm256_srli_epi32(num, 3), magic), 23);

        const __m256i packed = _mm256_shuffle_epi8(q, pack_bytes);
        const __m256i gathered = _mm256_permutevar8x32_epi32(packed, lane_pick);
        _mm_storel_epi64(reinterpret_cast<__m128i*>(gray + pix),
                         _mm256_castsi256_si128(gathered));
        pix += 8;
    }
    for (; pix < npix; ++pix) {
        const unsigned v =
            299u * rgb[3 * pix + 0] + 587u * rgb[3 * pix + 1] + 114u * rgb[3 * pix + 2];
        gray[pix] = static_cast<std::uint8_t>((v + 500u) / 1000u);
    }
}

} // namespace

const Table avx2_table = {
    sum_u8_avx2,         masked_sum_u8_avx2,  sum_abs_diff_u8_avx2,
    sum_sq_diff_u8_avx2, shift_clamp_u8_avx2, channel_sums_rgb_u8_avx2,
    rgb_to_gray_u8_avx2,
};

} // namespace asym::kernels::detail

#endif // ASYM_KERNELS_X86
