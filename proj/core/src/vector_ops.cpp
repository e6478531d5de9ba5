#include "tgreg/vector_ops.hpp"

#include <cassert>
#include <cmath>

namespace tgreg {

double dot(ConstView a, ConstView b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(ConstView a) { return std::sqrt(dot(a, a)); }

double norm_inf(ConstView a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

std::size_t support_size(ConstView a) {
  std::size_t n = 0;
  for (double v : a) n += (v != 0.0) ? 1 : 0;
  return n;
}

Vector subtract(ConstView a, ConstView b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void axpy(double alpha, ConstView x, MutView y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

bool all_finite(ConstView a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace tgreg
