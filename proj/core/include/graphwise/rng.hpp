#pragma once

#include <cstdint>
#include <random>

namespace graphwise {

// splitmix64 mixing step, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic child-seed derivation. Every independent random stream in the
// library (bootstrap replication, repetition, fold shuffle) obtains its seed
// as derive_seed(parent, stream indices...), so results never depend on
// scheduling or thread count.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

// Seeded generator with explicitly coded uniform and Box-Muller normal draws.
// The draw sequence depends only on the mt19937_64 bit stream, not on
// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform on [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // unbiased uniform integer in [lo, hi]
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // standard normal via Box-Muller, one spare cached
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace graphwise
