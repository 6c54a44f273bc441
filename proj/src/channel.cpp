#include "icrlab/channel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace icrlab {
namespace rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t part : parts) {
        std::uint64_t salted = part + 0x8f462907d5a8ca37ull;
        state = splitmix64(state) ^ splitmix64(salted);
    }
    return state;
}

Complex GaussianStream::next() {
    // Box-Muller on two 53-bit uniforms; u1 kept away from 0.
    const double u1 =
        (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
}

}  // namespace rng

ComplexRowVector ChannelRealization::row(int user, int slot) const {
    return slot_matrix(slot).row(user);
}

const ComplexMatrix& ChannelRealization::slot_matrix(int slot) const {
    if (slot < 0 || slot >= slots) {
        throw std::invalid_argument("slot index out of range");
    }
    return per_slot[slot];
}

ChannelRealization sample_channel(int users, int slots, std::uint64_t seed) {
    if (users < 1 || slots < 1) {
        throw std::invalid_argument("channel needs at least one user and one slot");
    }
    ChannelRealization channel{users, slots, seed, {}};
    channel.per_slot.assign(slots, ComplexMatrix(users, users));
    for (int t = 0; t < slots; ++t) {
        for (int i = 0; i < users; ++i) {
            rng::GaussianStream stream(rng::mix_key(
                {seed, rng::kTagChannel, static_cast<std::uint64_t>(i),
                 static_cast<std::uint64_t>(t)}));
            for (int k = 0; k < users; ++k) {
                channel.per_slot[t](i, k) = stream.next();
            }
        }
    }
    return channel;
}

void write_channel_csv(const ChannelRealization& channel, std::ostream& out) {
    out << "slot,rx,tx,re,im\n";
    char buffer[64];
    for (int t = 0; t < channel.slots; ++t) {
        for (int i = 0; i < channel.users; ++i) {
            for (int k = 0; k < channel.users; ++k) {
                const Complex h = channel.per_slot[t](i, k);
                std::snprintf(buffer, sizeof(buffer), "%.12g,%.12g", h.real(), h.imag());
                out << t << ',' << i << ',' << k << ',' << buffer << '\n';
            }
        }
    }
}

}  // namespace icrlab
