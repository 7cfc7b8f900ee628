#pragma once

#include <cstdint>
#include <random>

namespace sweep {

/// Seedable deterministic random stream built on std::mt19937_64, whose
/// output sequence is fixed by the standard and therefore identical on
/// every platform and compiler. Doubles take the engine's top 53 bits so
/// no implementation-defined distribution code is involved.
///
/// Consumers document their draw order against this stream; the reference
/// model consumes draws in agent-id order within each sub-phase.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive. The modulo bias is
    /// below n / 2^64 and irrelevant at the scales used here.
    std::uint64_t next_below(std::uint64_t n) { return engine_() % n; }

    bool bernoulli(double p) { return next_unit() < p; }

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace sweep
