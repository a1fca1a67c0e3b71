#ifndef ORDLAB_RNG_HPP
#define ORDLAB_RNG_HPP

#include <cstdint>

namespace ordlab {

// Deterministic 64-bit generator (splitmix64).  We avoid the standard
// distributions because their outputs are not pinned across library
// implementations; raw draws plus rejection keep every seed
// reproducible byte-for-byte.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Bernoulli with probability num/den.
  bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

  // Derive an independent stream, e.g. per trial index.
  static uint64_t derive(uint64_t seed, uint64_t index) {
    Rng r(seed ^ (0xa076'1d64'78bd'642fULL * (index + 1)));
    return r.next();
  }

 private:
  uint64_t state_;
};

}  // namespace ordlab

#endif
