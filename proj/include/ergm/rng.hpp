#pragma once

#include <array>
#include <cstdint>

namespace ergm {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
// A block is a pure function of (counter, key), so streams can be split
// and replayed without carrying generator state around.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

// Sequential view over Philox blocks.
//   key     = seed
//   counter = (position lo, position hi, stream lo, stream hi)
// Two streams with different (seed, stream) pairs never share a block.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::array<std::uint32_t, 4> next_block();
    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double next_uniform();
    // Uniform on [0, bound) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t bound);

    std::uint64_t position() const { return position_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    static double to_unit(std::uint64_t bits) {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }
    static std::uint64_t scale_below(std::uint64_t bits, std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * bound) >> 64);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t position_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0; // 64-bit words left in buffer_
};

} // namespace ergm
