#ifndef OPMINE_HASH_HPP
#define OPMINE_HASH_HPP

#include <cstdint>
#include <string_view>

namespace opmine {

// FNV-1a, 64 bit. Stable across platforms and runs; used for feature hashing
// and for file/dataset fingerprints. Never used where cryptographic strength
// matters.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xCBF29CE484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64_combine(std::uint64_t h, std::string_view data) {
  return fnv1a64(data, h);
}

}  // namespace opmine

#endif  // OPMINE_HASH_HPP
