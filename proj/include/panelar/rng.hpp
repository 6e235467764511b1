#ifndef PANELAR_RNG_HPP
#define PANELAR_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace panelar {

// Philox-4x32-10 counter-based generator. A stream is identified by
// (key, stream id); blocks within a stream are addressed by a 64-bit
// counter, so any draw can be produced independently of every other.
// This is what makes replication- and cross-section-level parallelism
// bit-reproducible: worker scheduling never touches the draw sequence.
class Philox4x32 {
  public:
    Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept
        : key_lo_(static_cast<std::uint32_t>(key)),
          key_hi_(static_cast<std::uint32_t>(key >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    // The 128-bit output block at a given counter value.
    std::array<std::uint32_t, 4> block(std::uint64_t counter) const noexcept {
        std::uint32_t c0 = static_cast<std::uint32_t>(counter);
        std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
        std::uint32_t x0 = c0, x1 = c1, x2 = stream_lo_, x3 = stream_hi_;
        std::uint32_t k0 = key_lo_, k1 = key_hi_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * x0;
            std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * x2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += kWeylA;
            k1 += kWeylB;
        }
        return {x0, x1, x2, x3};
    }

    std::uint64_t uint64_at(std::uint64_t index) const noexcept {
        auto b = block(index >> 1);
        int half = static_cast<int>(index & 1u) * 2;
        return (static_cast<std::uint64_t>(b[half + 1]) << 32) | b[half];
    }

  private:
    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

    std::uint32_t key_lo_, key_hi_;
    std::uint32_t stream_lo_, stream_hi_;
};

// Maps a 64-bit word onto (0,1); both endpoints are excluded so that
// log() and inverse-power transforms stay finite.
inline double to_open_unit(std::uint64_t u) noexcept {
    // 52 bits: (k + 0.5) is exact for k < 2^52, so the result stays in
    // [2^-53, 1 - 2^-53] with no rounding to either endpoint.
    return (static_cast<double>(u >> 12) + 0.5) * 0x1.0p-52;
}

// Sequential view over one stream: uniforms, normals (Box-Muller with a
// cached second value), and the innovation transforms all consume words
// in a fixed order, so one stream is one reproducible draw sequence.
class SubStream {
  public:
    SubStream(std::uint64_t key, std::uint64_t stream) noexcept
        : engine_(key, stream) {}

    std::uint64_t next_uint64() noexcept { return engine_.uint64_at(index_++); }

    double next_open_unit() noexcept { return to_open_unit(next_uint64()); }

    double next_normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_open_unit();
        double u2 = next_open_unit();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    double next_rademacher() noexcept {
        return (next_uint64() & 1u) ? 1.0 : -1.0;
    }

    // Student-t via the polar method: for U,V uniform on (0,1),
    // sqrt(df (U^(-2/df) - 1)) cos(2 pi V) is exactly t(df).
    double next_student_t(double df) noexcept {
        double u = next_open_unit();
        double v = next_open_unit();
        double radius = std::sqrt(df * (std::pow(u, -2.0 / df) - 1.0));
        return radius * std::cos(2.0 * std::numbers::pi * v);
    }

  private:
    Philox4x32 engine_;
    std::uint64_t index_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// SplitMix64 finalizer; used to derive per-replication master seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace panelar

#endif // PANELAR_RNG_HPP
