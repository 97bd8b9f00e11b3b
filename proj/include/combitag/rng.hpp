#ifndef COMBITAG_RNG_HPP
#define COMBITAG_RNG_HPP

#include <cstdint>

namespace combitag {

// Self-contained splitmix64 generator. All randomness in the project flows
// through this type so that runs are replayable across platforms and
// standard-library versions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t z;
    do {
      z = next();
    } while (z >= limit);
    return z % n;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Seed fan-out rule: a global seed and a stream index (row number, tagger
// index, ...) map to an independent stream seed. Documented so that parallel
// per-row tie-breaking stays replayable.
inline std::uint64_t mix_seed(std::uint64_t global_seed, std::uint64_t stream) {
  Rng r(global_seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return r.next();
}

inline Rng row_rng(std::uint64_t global_seed, std::uint64_t row) {
  return Rng(mix_seed(global_seed, row));
}

} // namespace combitag

#endif
