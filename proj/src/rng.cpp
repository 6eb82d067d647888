#include "prolime/rng.hpp"

#include "prolime/normal.hpp"

#include <bit>
#include <stdexcept>

namespace prolime {
namespace {
__extension__ using uint128 = unsigned __int128;
} // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::child(std::uint64_t k) const {
    return RngStream{mix64(seed ^ mix64(stream_id ^ 0x5851f42d4c957f2dULL)), k};
}

Generator::Generator(RngStream stream) {
    std::uint64_t key = mix64(stream.seed) ^ mix64(mix64(stream.stream_id) + 0x2545f4914f6cdd1dULL);
    for (auto& word : m_State) {
        key = mix64(key);
        word = key;
    }
    if ((m_State[0] | m_State[1] | m_State[2] | m_State[3]) == 0) {
        m_State[0] = 1;
    }
}

std::uint64_t Generator::next() {
    const std::uint64_t result = std::rotl(m_State[1] * 5, 7) * 9;
    const std::uint64_t t = m_State[1] << 17;
    m_State[2] ^= m_State[0];
    m_State[3] ^= m_State[1];
    m_State[1] ^= m_State[2];
    m_State[0] ^= m_State[3];
    m_State[2] ^= t;
    m_State[3] = std::rotl(m_State[3], 45);
    return result;
}

double Generator::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Generator::uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double Generator::normal() {
    return inverse_normal_cdf(uniform_open());
}

std::uint64_t Generator::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Generator::below: bound must be positive");
    }
    // Lemire's multiply-and-reject.
    std::uint64_t x = next();
    uint128 m = static_cast<uint128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            x = next();
            m = static_cast<uint128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

} // namespace prolime
