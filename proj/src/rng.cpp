#include "ddtm/rng.hpp"

namespace ddtm {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid, std::uint64_t run) noexcept {
    // grid and run are packed into one word before mixing, so the map
    // (grid, run) -> seed is injective while both fit in 32 bits.
    const std::uint64_t packed = (grid << 32) ^ (run & 0xffffffffULL);
    return mix64(mix64(master) ^ packed);
}

double uniform_open_closed(Rng& rng) {
    // 53 random bits -> k in [0, 2^53); (k + 1) / 2^53 lies in (0, 1].
    const std::uint64_t k = rng() >> 11;
    return static_cast<double>(k + 1) * 0x1.0p-53;
}

std::uint32_t uniform_index(Rng& rng, std::uint32_t n) {
    // Lemire's multiply-shift with rejection; unbiased.
    std::uint64_t x = rng() & 0xffffffffULL;
    std::uint64_t m = x * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
        const std::uint32_t t = (0u - n) % n;
        while (low < t) {
            x = rng() & 0xffffffffULL;
            m = x * n;
            low = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

}  // namespace ddtm
