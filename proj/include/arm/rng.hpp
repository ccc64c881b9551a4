#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace arm {

/// Portable random stream for scenario generation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard (seed 5489: the 10000th draw is 9981545732273789042). Standard
/// distributions are implementation-defined, so bounded integers and unit
/// doubles are derived here from raw 64-bit draws:
///   below(n): rejection of raw draws < (2^64 - n) mod n, then raw mod n
///   unit():   (raw >> 11) * 2^-53
/// A reimplementation in another language reproduces scenarios bit for bit.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace arm
