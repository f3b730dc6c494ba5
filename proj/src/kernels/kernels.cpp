// Runtime backend selection for the byte kernels.

#include "kernels_tables.hpp"

#include <atomic>

#include "asym/error.hpp"

namespace asym::kernels {

namespace {

using detail::scalar_table;

bool avx2_supported() noexcept {
#if ASYM_KERNELS_X86 && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Table* table_for(Backend b) noexcept {
    switch (b) {
    case Backend::scalar:
        return &scalar_table;
    case Backend::avx2:
#if ASYM_KERNELS_X86
        return avx2_supported() ? &detail::avx2_table : nullptr;
#else
        return nullptr;
#endif
    case Backend::neon:
#if ASYM_KERNELS_ARM
        return &detail::neon_table;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

Backend detect_best() noexcept {
#if ASYM_KERNELS_ARM
    return Backend::neon;
#else
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
#endif
}

struct Dispatch {
    std::atomic<const Table*> table;
    std::atomic<Backend> backend;
    Dispatch() {
        const Backend best = detect_best();
        backend.store(best, std::memory_order_relaxed);
        table.store(table_for(best), std::memory_order_relaxed);
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

const Table& active() {
    return *dispatch().table.load(std::memory_order_relaxed);
}

} // namespace

const char* backend_name(Backend b) noexcept {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

Backend active_backend() noexcept {
    return dispatch().backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) noexcept {
    return table_for(b) != nullptr;
}

const Table* backend_table(Backend b) noexcept {
    return table_for(b);
}

void force_backend(Backend b) {
    const Table* t = table_for(b);
    if (t == nullptr)
        raise(errc::invalid_parameter,
              std::string("kernel backend not available on this machine: ") + backend_name(b));
    dispatch().backend.store(b, std::memory_order_relaxed);
    dispatch().table.store(t, std::memory_order_relaxed);
}

void reset_backend() noexcept {
    const Backend best = detect_best();
    dispatch().backend.store(best, std::memory_order_relaxed);
    dispatch().table.store(table_for(best), std::memory_order_relaxed);
}

std::uint64_t sum_u8(const std::uint8_t* p, std::size_t n) {
    return active().sum_u8(p, n);
}

std::uint64_t masked_sum_u8(const std::uint8_t* p, const std::uint8_t* mask01, std::size_t n) {
    return active().masked_sum_u8(p, mask01, n);
}

std::uint64_t sum_abs_diff_u8(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    return active().sum_abs_diff_u8(a, b, n);
}

std::uint64_t sum_sq_diff_u8(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    return active().sum_sq_diff_u8(a, b, n);
}

void shift_clamp_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, int delta) {
    active().shift_clamp_u8(src, dst, n, delta);
}

void channel_sums_rgb_u8(const std::uint8_t* rgb, std::size_t npix, std::uint64_t out[3]) {
    active().channel_sums_rgb_u8(rgb, npix, out);
}

void rgb_to_gray_u8(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t npix) {
    active().rgb_to_gray_u8(rgb, gray, npix);
}

} // namespace asym::kernels
