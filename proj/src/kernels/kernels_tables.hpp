#pragma once

#include "asym/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define ASYM_KERNELS_X86 1
#else
#define ASYM_KERNELS_X86 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define ASYM_KERNELS_ARM 1
#else
#define ASYM_KERNELS_ARM 0
#endif

namespace asym::kernels::detail {

extern const Table scalar_table;

#if ASYM_KERNELS_X86
extern const Table avx2_table;
#endif

#if ASYM_KERNELS_ARM
extern const Table neon_table;
#endif

} // namespace asym::kernels::detail
