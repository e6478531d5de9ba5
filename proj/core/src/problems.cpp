#include "tgreg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "tgreg/errors.hpp"
#include "tgreg/random.hpp"

namespace tgreg {

ImageGrid synth_sparse_image(std::size_t rows, std::size_t cols, std::size_t source_count,
                             std::uint64_t seed) {
  const std::size_t n = rows * cols;
  if (n == 0 || source_count == 0) throw InvalidInput("synth_sparse_image: empty request");
  // At most 15% of the pixels may be lit.
  const std::size_t budget = std::max<std::size_t>(1, (n * 15) / 100);
  if (source_count >= n || source_count > budget)
    throw InvalidInput("synth_sparse_image: too many sources for an 85%-zero image");
  const double share = static_cast<double>(budget) / static_cast<double>(source_count);
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kBarAspect = 3.0;

  ImageGrid img{rows, cols, Vector(n, 0.0)};
  Rng rng(seed);
  const auto spread_r = std::max<std::size_t>(1, rows / 5);
  const auto spread_c = std::max<std::size_t>(1, cols / 5);
  std::size_t lit = 0;
  std::vector<std::pair<std::size_t, double>> footprint;
  for (std::size_t s = 0; s < source_count; ++s) {
    const double r0 = static_cast<double>(std::min(rows - 1, rows / 2 + rng.below(2 * spread_r + 1)) -
                                          std::min(rows / 2, spread_r));
    const double c0 = static_cast<double>(std::min(cols - 1, cols / 2 + rng.below(2 * spread_c + 1)) -
                                          std::min(cols / 2, spread_c));
    const double amp = 0.5 + 0.5 * rng.uniform();
    const double area = share * (0.6 + 0.4 * rng.uniform());
    const bool bar = rng.uniform() < 0.5;
    const double angle = kPi * rng.uniform();
    double a = bar ? std::sqrt(area * kBarAspect / kPi) : std::sqrt(area / kPi);
    double b = bar ? a / kBarAspect : a;
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);

    // Linear taper from amp at the centre to 0 on the ellipse; shrink until
    // the newly lit pixels fit the remaining budget (the centre always fits).
    for (;;) {
      footprint.clear();
      std::size_t fresh = 0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double dr = static_cast<double>(r) - r0;
        if (std::abs(dr) > a + 1.0) continue;
        for (std::size_t c = 0; c < cols; ++c) {
          const double dc = static_cast<double>(c) - c0;
          const double u = (ca * dr + sa * dc) / a;
          const double v = (-sa * dr + ca * dc) / b;
          const double q = u * u + v * v;
          if (q >= 1.0) continue;
          const std::size_t idx = r * cols + c;
          footprint.emplace_back(idx, amp * (1.0 - q));
          if (img.pixels[idx] == 0.0) ++fresh;
        }
      }
      if (lit + fresh <= budget) {
        lit += fresh;
        break;
      }
      if (footprint.size() <= 1) {
        footprint.clear();
        break;
      }
      a *= 0.85;
      b *= 0.85;
    }
    for (const auto& [idx, v] : footprint) img.pixels[idx] = std::max(img.pixels[idx], v);
  }
  return img;
}

ImageGrid synth_dense_image(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw InvalidInput("synth_dense_image: empty request");
  constexpr int kBumps = 8;
  constexpr double kFloor = 0.05;

  struct Bump {
    double r, c, width, amp;
  };
  Rng rng(seed);
  std::vector<Bump> bumps;
  const double extent = static_cast<double>(std::max(rows, cols));
  for (int i = 0; i < kBumps; ++i) {
    bumps.push_back({rng.uniform() * static_cast<double>(rows),
                     rng.uniform() * static_cast<double>(cols),
                     extent * (0.05 + 0.2 * rng.uniform()), 0.2 + 0.8 * rng.uniform()});
  }

  ImageGrid img{rows, cols, Vector(rows * cols, 0.0)};
  double peak = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      for (const auto& b : bumps) {
        const double dr = static_cast<double>(r) - b.r;
        const double dc = static_cast<double>(c) - b.c;
        v += b.amp * std::exp(-(dr * dr + dc * dc) / (2.0 * b.width * b.width));
      }
      img.at(r, c) = v;
      peak = std::max(peak, v);
    }
  }
  for (auto& p : img.pixels) p = std::clamp(kFloor + (1.0 - kFloor) * p / peak, 0.0, 1.0);
  return img;
}

NoisyData add_noise(ConstView b, const NoiseSpec& spec) {
  if (!(spec.rho > 0.0)) throw ConfigError("rho", "noise level must be positive");
  const double nb = norm2(b);
  if (!(nb > 0.0)) throw InvalidInput("add_noise: data vector is zero");

  Rng rng(spec.seed);
  Vector eps = rng.normal_vector(b.size());
  const double scale = spec.rho * nb / norm2(eps);
  NoisyData out{Vector(b.size()), 0.0};
  for (std::size_t i = 0; i < b.size(); ++i) {
    eps[i] *= scale;
    out.b_noisy[i] = b[i] + eps[i];
  }
  out.delta = norm2(eps);
  return out;
}

double relative_error(ConstView x, ConstView truth) {
  if (x.size() != truth.size()) throw InvalidInput("relative_error: length mismatch");
  const double nt = norm2(truth);
  if (!(nt > 0.0)) throw InvalidInput("relative_error: truth is zero");
  return norm2(subtract(truth, x)) / nt;
}

std::size_t sparsity_count(ConstView x, double tol) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [tol](double v) { return std::abs(v) <= tol; }));
}

double residual_relative_percent(double residual_norm, double b_noisy_norm) {
  return 100.0 * residual_norm / b_noisy_norm;
}

DeblurProblem make_deblur_problem(const DeblurSpec& spec) {
  auto op = make_gaussian_blur(spec.side, spec.sigma, spec.band);
  ImageGrid truth = spec.image == ImageKind::kSparse
                        ? synth_sparse_image(spec.side, spec.side, spec.source_count, spec.seed)
                        : synth_dense_image(spec.side, spec.side, spec.seed);
  Vector b = op.apply(truth.pixels);
  // Offset keeps the noise stream independent of the image stream.
  NoisyData noisy = add_noise(b, NoiseSpec{spec.rho, spec.seed + 0x9E3779B97F4A7C15ULL});
  return DeblurProblem{std::move(op), std::move(truth), std::move(b), std::move(noisy.b_noisy),
                       noisy.delta};
}

}  // namespace tgreg
