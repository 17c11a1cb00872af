#include "adl/rng.hpp"

namespace adl {

namespace {

// FNV-1a, stable across platforms; only used to derive substream seeds.
uint64_t fnv1a(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Rng Rng::stream(std::string_view name) const {
    Rng copy = *this;
    uint64_t base = copy.eng_();
    return Rng(base ^ fnv1a(name));
}

uint64_t Rng::below(uint64_t bound) {
    require(bound > 0, "Rng::below: zero bound");
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

long Rng::int_range(long lo, long hi) {
    require(lo <= hi, "Rng::int_range: empty range");
    uint64_t span = uint64_t(hi) - uint64_t(lo) + 1;
    if (span == 0) return (long)next_u64();  // full 64-bit range
    return lo + (long)below(span);
}

Rat Rng::rational01(long max_den) {
    long d = int_range(1, max_den);
    long n = int_range(0, d - 1);
    return make_rat(Int(long(n)), Int(long(d)));
}

Rat Rng::rational(long max_den, long span) {
    long d = int_range(1, max_den);
    long n = int_range(-span * d, span * d);
    return make_rat(Int(long(n)), Int(long(d)));
}

}  // namespace adl
