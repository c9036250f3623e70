#include "sieve.hpp"

#include <thread>

namespace psigrh::detail {

std::vector<uint32_t> primes_up_to(uint32_t n) {
  std::vector<uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (uint32_t p = 2; p <= n; ++p) {
    if (comp[p]) continue;
    primes.push_back(p);
    if (static_cast<uint64_t>(p) * p <= n)
      for (uint64_t k = static_cast<uint64_t>(p) * p; k <= n; k += p) comp[static_cast<size_t>(k)] = true;
  }
  return primes;
}

unsigned resolve_threads(unsigned requested) {
  if (requested == 0) {
    requested = std::thread::hardware_concurrency();
    if (requested == 0) requested = 1;
  }
  if (requested > 64) requested = 64;
  return requested;
}

}  // namespace psigrh::detail
