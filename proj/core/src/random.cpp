#include "tgreg/random.hpp"

#include <cmath>
#include <numbers>

namespace tgreg {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // n is tiny relative to 2^64 in every caller; modulo bias is negligible.
  return engine_() % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Vector Rng::normal_vector(std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = normal();
  return v;
}

}  // namespace tgreg
