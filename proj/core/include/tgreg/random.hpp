#pragma once

#include <cstdint>
#include <random>

#include "tgreg/vector_ops.hpp"

namespace tgreg {

// Seeded pseudo-random stream with platform-identical output.
//
// Uniforms take the top 53 bits of std::mt19937_64 (whose sequence is fixed by
// the standard); normals use the Box-Muller transform on two such uniforms.
// std::normal_distribution is deliberately not used: its algorithm is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  Vector normal_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tgreg
