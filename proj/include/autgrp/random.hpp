#pragma once

#include <cstdint>
#include <random>

namespace autgrp {

// Seeded random source. Bounded draws use rejection sampling on top of
// mt19937_64 so sequences are identical across standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1).
  double unit();

  // Independent stream derived from this generator's seed.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace autgrp
