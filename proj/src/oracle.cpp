#include "dylab/oracle.hpp"

namespace dylab {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

CauchyOracle canonical_oracle(const Dyadic& x) {
    return CauchyOracle([x](std::uint32_t n) { return x.round_to_precision(n); });
}

CauchyOracle jittered_oracle(const Dyadic& x, std::uint64_t seed) {
    return CauchyOracle([x, seed](std::uint32_t n) {
        Dyadic base = x.round_to_precision(n + 1);
        int j = (int)(splitmix64(seed ^ (0x51ed2701ull + n)) % 3) - 1;
        if (j == 0) return base;
        Dyadic step = Dyadic::power_of_two(-(std::int64_t)n - 1);
        return j > 0 ? base + step : base - step;
    });
}

}  // namespace dylab
