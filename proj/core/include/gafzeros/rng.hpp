#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "gafzeros/errors.hpp"

namespace gafzeros {

/**
 * Deterministic counter-based random generator.
 *
 * Every output is a fixed avalanche hash of (seed, stream, counter), with
 * stream and counter packed injectively into one 64-bit word. Two generators
 * with the same seed but different stream indices can therefore never
 * produce overlapping output sequences: they hash disjoint input sets.
 * Replaying a (seed, stream) pair replays the exact sequence, independent
 * of platform or thread scheduling.
 *
 * Limits: stream < 2^32 and at most 2^32 draws per stream.
 */
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed)), hi_(stream << 32) {
        if (stream >> 32)
            throw DomainError("CounterRng: stream index must be below 2^32");
    }

    std::uint64_t next_u64() {
        if (counter_ >> 32)
            throw NumericalError("CounterRng: stream exhausted (2^32 draws)");
        std::uint64_t packed = hi_ | counter_++;
        return mix(base_ ^ (packed * 0x9E3779B97F4A7C15ull));
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard complex Gaussian with E|z|^2 = 1 (real and imaginary parts
    // independent N(0, 1/2)); polar transform: exponential modulus squared,
    // uniform phase.
    std::complex<double> next_gaussian() {
        double u = next_unit();
        double v = next_unit();
        double amp = std::sqrt(-std::log1p(-u));
        double phase = 6.283185307179586476925286766559 * v;
        return {amp * std::cos(phase), amp * std::sin(phase)};
    }

private:
    // SplitMix64 finalizer; bijective on 64-bit words.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t base_;
    std::uint64_t hi_;
    std::uint64_t counter_ = 0;
};

} // namespace gafzeros
