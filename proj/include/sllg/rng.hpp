#pragma once
#include <array>
#include <cmath>
#include <cstdint>

namespace sllg {

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (seed, stream, index), so trajectories are reproducible independently of
// scheduling and can be sampled in any order.
namespace philox {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> block(std::uint64_t key, std::array<std::uint32_t, 4> ctr) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(0xD2511F53u, ctr[0], hi0, lo0);
    mulhilo(0xCD9E8D57u, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += 0x9E3779B9u;
    k1 += 0xBB67AE85u;
  }
  return ctr;
}

}  // namespace philox

// one logical random stream; draws indexed by a 64-bit counter
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t index, int word) const {
    auto b = philox::block(seed_, {static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32),
                                   static_cast<std::uint32_t>(stream_),
                                   static_cast<std::uint32_t>(stream_ >> 32)});
    return word == 0 ? (static_cast<std::uint64_t>(b[0]) << 32 | b[1])
                     : (static_cast<std::uint64_t>(b[2]) << 32 | b[3]);
  }

  // uniform in [0, 1)
  double uniform(std::uint64_t index, int word = 0) const {
    return static_cast<double>(bits(index, word) >> 11) * 0x1p-53;
  }

  // uniform in (0, 1]
  double uniform_pos(std::uint64_t index, int word = 0) const {
    return (static_cast<double>(bits(index, word) >> 11) + 1.0) * 0x1p-53;
  }

  // standard normal, one draw per counter value (Box-Muller, cosine branch)
  double normal(std::uint64_t index) const {
    double u1 = uniform_pos(index, 0);
    double u2 = uniform(index, 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace sllg
