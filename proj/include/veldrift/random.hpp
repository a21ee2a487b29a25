#pragma once

#include <array>
#include <cstdint>

namespace veldrift {

/// Seed used whenever a config does not name one.
inline constexpr std::uint64_t kDefaultSeed = 20190527ULL;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123). A pure bijection
/// of the counter for a fixed key.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Map 64 random bits to a double in the open interval (0, 1).
double to_open_unit(std::uint64_t bits);

/// Counter-based random stream. A stream is identified by (seed, stream
/// id); its n-th block is philox(counter = {n, stream}, key = seed). Any
/// element can be computed without touching the others, so results do not
/// depend on how work is partitioned across threads.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position = 0);

    std::uint64_t next_u64();
    double uniform();  ///< (0, 1)
    double normal();   ///< standard normal, Box-Muller on one block

    std::uint64_t position() const { return position_; }

    /// 128 bits of block `position` of stream `stream_id`.
    static std::array<std::uint64_t, 2> block(std::uint64_t seed, std::uint64_t stream_id,
                                              std::uint64_t position);

    /// Standard normal drawn from block `position` of `stream_id`.
    static double normal_at(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t position_;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

/// Derive an independent seed for a named sub-task (e.g. the delta
/// increments of a split experiment) from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

}  // namespace veldrift
