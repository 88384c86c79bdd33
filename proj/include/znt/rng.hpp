#pragma once

#include <cstdint>

namespace znt {

// Splittable counter-based generator: every draw is a pure function of
// (master seed, stream, counter), so ensembles are order- and
// thread-independent. splitmix64 finalizer underneath.
class Rng {
 public:
  Rng(uint64_t master, uint64_t stream = 0)
      : base_(mix(master + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  uint64_t at(uint64_t counter) const { return mix(base_ + 0xbf58476d1ce4e5b9ULL * (counter + 1)); }

  uint64_t next() { return at(counter_++); }

  // uniform in [0, n) without modulo bias (Lemire reduction)
  uint64_t next_below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

}  // namespace znt
