#ifndef OPMINE_RNG_HPP
#define OPMINE_RNG_HPP

#include <cstdint>

namespace opmine {

// splitmix64: tiny, fast, and identical on every platform. std::mt19937 with
// the standard distributions is implementation-defined, which would break the
// byte-exact rerun guarantee, so all seeded randomness in the library goes
// through this generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n). n is tiny everywhere this is used (tie-break
  // candidates, shuffle indices), so plain modulo is fine.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Deterministic Fisher-Yates.
  template <typename Vec>
  void shuffle(Vec& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Mixes several values into one substream seed. Used to derive independent
// per-tweet, per-decision generators from the configured master seed, which
// keeps amalgamation pure per tweet (no shared stream to consume in order).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 mix(seed);
  std::uint64_t s = mix.next();
  s ^= a + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
  SplitMix64 mix2(s);
  s = mix2.next();
  s ^= b + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
  return SplitMix64(s).next();
}

}  // namespace opmine

#endif  // OPMINE_RNG_HPP
