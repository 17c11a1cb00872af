#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "adl/arith.hpp"

namespace adl {

// Deterministic seeded generator. mt19937_64 output is fixed by the standard
// and all derived draws below avoid std distributions, so identical seeds give
// identical streams on every platform and toolchain.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // Independent substream keyed by purpose, so adding a new consumer does
    // not shift every other stream.
    Rng stream(std::string_view name) const;

    uint64_t next_u64() { return eng_(); }

    // Uniform in [0, bound) by rejection; bound > 0.
    uint64_t below(uint64_t bound);

    // Uniform integer in [lo, hi] inclusive.
    long int_range(long lo, long hi);

    // Uniform dyadic double in [0, 1).
    double real01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform rational n/d in [0,1) with denominator d drawn from [1, max_den].
    Rat rational01(long max_den);

    // Rational in [-span, span] with denominator at most max_den.
    Rat rational(long max_den, long span);

  private:
    std::mt19937_64 eng_;
};

}  // namespace adl
