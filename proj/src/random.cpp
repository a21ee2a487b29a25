#include "veldrift/random.hpp"

#include <cmath>
#include <numbers>

namespace veldrift {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter round(const PhiloxCounter& x, const PhiloxKey& key) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
}

inline PhiloxKey split(std::uint64_t v) {
    return {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32)};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        counter = round(counter, key);
    }
    return counter;
}

double to_open_unit(std::uint64_t bits) {
    // 52 high bits, centred in their bin; with 53 the top bin rounds to 1.
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

std::array<std::uint64_t, 2> Substream::block(std::uint64_t seed, std::uint64_t stream_id,
                                              std::uint64_t position) {
    const auto pos = split(position);
    const auto sid = split(stream_id);
    const auto out = philox4x32_10({pos[0], pos[1], sid[0], sid[1]}, split(seed));
    return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
            (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
}

double Substream::normal_at(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position) {
    const auto bits = block(seed, stream_id, position);
    const double u1 = to_open_unit(bits[0]);
    const double u2 = to_open_unit(bits[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Substream::Substream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position)
    : seed_(seed), stream_(stream_id), position_(position) {}

std::uint64_t Substream::next_u64() {
    if (buffered_ == 0) {
        buffer_ = block(seed_, stream_, position_++);
        buffered_ = 2;
    }
    return buffer_[2 - buffered_--];
}

double Substream::uniform() { return to_open_unit(next_u64()); }

double Substream::normal() {
    buffered_ = 0;
    return normal_at(seed_, stream_, position_++);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    // splitmix64 finalizer over a tag-offset master seed
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace veldrift
