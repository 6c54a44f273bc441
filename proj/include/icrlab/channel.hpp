#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "icrlab/linalg.hpp"

namespace icrlab {
namespace rng {

// splitmix64 step; the whole project draws randomness through this so that
// results are bit-reproducible across platforms and build modes.
std::uint64_t splitmix64(std::uint64_t& state);

// Folds key parts (seed, purpose tag, indices) into one stream key.
std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts);

// Purpose tags keep the channel, symbol, noise and trial streams independent
// even when they share a user seed.
inline constexpr std::uint64_t kTagChannel = 0x4348414e4e454c00ull;
inline constexpr std::uint64_t kTagSymbols = 0x53594d424f4c5300ull;
inline constexpr std::uint64_t kTagNoise = 0x4e4f495345000000ull;
inline constexpr std::uint64_t kTagTrial = 0x545249414c000000ull;

// Counter-based circularly symmetric unit-variance complex Gaussian stream.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t key) : state_(key) {}
    Complex next();

  private:
    std::uint64_t state_;
};

}  // namespace rng

// Fading realization: a 1 x K row per (receiver, slot), i.i.d. CN(0,1)
// entries, generated independently per grid cell from (seed, receiver, slot).
struct ChannelRealization {
    int users = 0;
    int slots = 0;
    std::uint64_t seed = 0;
    std::vector<ComplexMatrix> per_slot;  // per_slot[t](i, :) = receiver i's row at slot t

    ComplexRowVector row(int user, int slot) const;
    const ComplexMatrix& slot_matrix(int slot) const;
};

ChannelRealization sample_channel(int users, int slots, std::uint64_t seed);

// Columns: slot,rx,tx,re,im (0-based indices).
void write_channel_csv(const ChannelRealization& channel, std::ostream& out);

}  // namespace icrlab
