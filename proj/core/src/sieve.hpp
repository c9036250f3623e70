#pragma once

#include <cstdint>
#include <vector>

namespace psigrh::detail {

std::vector<uint32_t> primes_up_to(uint32_t n);

// 0 resolves to the hardware thread count, clamped to [1, 64].
unsigned resolve_threads(unsigned requested);

}  // namespace psigrh::detail
