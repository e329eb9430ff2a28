#pragma once

#include <cstdint>
#include <string_view>

namespace larsson {

// SplitMix64 step (Vigna). Used both as a generator and as a mixing
// function for deriving independent streams from (seed, id, ...) tuples,
// so that parallel consumers never share state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
  return splitmix64(x);
}

// Order-free derivation: the result depends only on the arguments, not on
// how many values were drawn before.
inline std::uint64_t derive_state(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = seed;
  s = mix64(s ^ 0x6a09e667f3bcc909ULL);
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  s = mix64(s ^ c);
  return s;
}

inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0,1)
}

// Sequential stream; cheap to copy, never shared across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next() { return splitmix64(state_); }
  double uniform() { return to_unit(next()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Binary tree addresses over the alphabet {1,2}. A node at level l with
// digits d_1..d_l is encoded as (1 << l) | bits, bit k = d_k - 1 taken
// MSB-first; the leading 1 keeps "1" and "11" distinct.
inline std::uint64_t encode_address(int level, std::uint32_t path_bits) {
  return (std::uint64_t{1} << level) | path_bits;
}

inline std::uint64_t node_state(std::uint64_t seed, std::uint64_t tree_id,
                                int level, std::uint32_t path_bits) {
  return derive_state(seed, tree_id, encode_address(level, path_bits));
}

}  // namespace larsson
