#ifndef PROLIME_RNG_HPP
#define PROLIME_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace prolime {

/// Address of an independent random stream. The same (seed, stream_id)
/// always reproduces the same draws; nothing here touches global state.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Sub-stream k of this stream, for hierarchical splitting
    /// (experiment -> trial -> cell).
    RngStream child(std::uint64_t k) const;

    bool operator==(const RngStream&) const = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// xoshiro256** seeded from a RngStream. All derived draws (uniforms,
/// normals, bounded integers, shuffles) are implemented here so that the
/// sequence does not depend on the standard library's distributions.
class Generator {
public:
    explicit Generator(RngStream stream);

    std::uint64_t next();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in (0, 1).
    double uniform_open();
    /// Standard normal via the inverse CDF of uniform_open().
    double normal();
    /// Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> m_State;
};

} // namespace prolime

#endif
