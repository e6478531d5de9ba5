#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tgreg {

using Vector = std::vector<double>;
using ConstView = std::span<const double>;
using MutView = std::span<double>;

double dot(ConstView a, ConstView b);
double norm2(ConstView a);
double norm_inf(ConstView a);

// Number of entries that are not exactly zero (||.||_0).
std::size_t support_size(ConstView a);

// out = a - b
Vector subtract(ConstView a, ConstView b);

// y += alpha * x
void axpy(double alpha, ConstView x, MutView y);

bool all_finite(ConstView a);

}  // namespace tgreg
