// Byte-array reduction and pixel-shift kernels behind the image and frame
// math. Every kernel has a scalar reference implementation and, where the
// hardware supports it, a SIMD variant selected at runtime. All variants
// produce bit-identical results (integer arithmetic only).

#pragma once

#include <cstddef>
#include <cstdint>

namespace asym::kernels {

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b) noexcept;

/// Backend currently answering calls.
Backend active_backend() noexcept;

/// True if `b` can run on this machine.
bool backend_available(Backend b) noexcept;

/// Pin the dispatch to one backend (throws InvalidParameter when the
/// backend is unavailable here). Used by the equivalence tests.
void force_backend(Backend b);

/// Return to the auto-detected best backend.
void reset_backend() noexcept;

/// Sum of all bytes.
std::uint64_t sum_u8(const std::uint8_t* p, std::size_t n);

/// Sum of bytes where mask01[i] != 0 (mask holds 0 or 1).
std::uint64_t masked_sum_u8(const std::uint8_t* p, const std::uint8_t* mask01, std::size_t n);

/// Sum of |a[i] - b[i]|.
std::uint64_t sum_abs_diff_u8(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

/// Sum of (a[i] - b[i])^2.
std::uint64_t sum_sq_diff_u8(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

/// dst[i] = clamp(src[i] + delta, 0, 255); delta in [-255, 255].
void shift_clamp_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, int delta);

/// Per-channel sums of an interleaved r,g,b buffer of `npix` pixels.
void channel_sums_rgb_u8(const std::uint8_t* rgb, std::size_t npix, std::uint64_t out[3]);

/// Rec.601 luma, gray = round((299 r + 587 g + 114 b) / 1000), exact.
void rgb_to_gray_u8(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t npix);

// The raw per-backend tables, exposed so equivalence tests can compare
// implementations directly.
struct Table {
    std::uint64_t (*sum_u8)(const std::uint8_t*, std::size_t);
    std::uint64_t (*masked_sum_u8)(const std::uint8_t*, const std::uint8_t*, std::size_t);
    std::uint64_t (*sum_abs_diff_u8)(const std::uint8_t*, const std::uint8_t*, std::size_t);
    std::uint64_t (*sum_sq_diff_u8)(const std::uint8_t*, const std::uint8_t*, std::size_t);
    void (*shift_clamp_u8)(const std::uint8_t*, std::uint8_t*, std::size_t, int);
    void (*channel_sums_rgb_u8)(const std::uint8_t*, std::size_t, std::uint64_t[3]);
    void (*rgb_to_gray_u8)(const std::uint8_t*, std::uint8_t*, std::size_t);
};

/// nullptr when the backend is not available on this machine.
const Table* backend_table(Backend b) noexcept;

} // namespace asym::kernels
