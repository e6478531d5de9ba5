#pragma once

#include <cstddef>
#include <cstdint>

#include "tgreg/linops.hpp"
#include "tgreg/vector_ops.hpp"

namespace tgreg {

// Row-major image. Generated truths have values in [0, 1].
struct ImageGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vector pixels;

  double& at(std::size_t r, std::size_t c) { return pixels[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
};

// A cluster of tapered points and short bars around the image centre on an
// exactly-zero background; at least 85% of the pixels are zero. Throws
// InvalidInput if source_count cannot fit that budget.
ImageGrid synth_sparse_image(std::size_t rows, std::size_t cols, std::size_t source_count,
                             std::uint64_t seed);

// Smooth superposition of Gaussian bumps on a small positive floor; no exact zeros.
ImageGrid synth_dense_image(std::size_t rows, std::size_t cols, std::uint64_t seed);

struct NoiseSpec {
  double rho = 0.1;  // target ||eps|| / ||b||
  std::uint64_t seed = 0;
};

struct NoisyData {
  Vector b_noisy;
  double delta = 0.0;  // ||eps||_2
};

// Adds seeded Gaussian noise rescaled so that ||eps|| / ||b|| == rho.
// Throws ConfigError for rho <= 0 and InvalidInput for a zero b.
NoisyData add_noise(ConstView b, const NoiseSpec& spec);

// ||truth - x|| / ||truth||. Throws InvalidInput for a zero truth.
double relative_error(ConstView x, ConstView truth);

// Entries with |x_i| <= tol.
std::size_t sparsity_count(ConstView x, double tol = 0.0);

double residual_relative_percent(double residual_norm, double b_noisy_norm);

enum class ImageKind { kSparse, kDense };

struct DeblurSpec {
  std::size_t side = 64;
  double sigma = 4.0;
  std::size_t band = 16;
  ImageKind image = ImageKind::kSparse;
  std::size_t source_count = 20;
  std::uint64_t seed = 1;
  double rho = 0.1;
};

// Blur operator, truth, clean and noisy data for one seeded experiment.
struct DeblurProblem {
  GaussianBlurOperator op;
  ImageGrid truth;
  Vector b_clean;
  Vector b_noisy;
  double delta = 0.0;
};

DeblurProblem make_deblur_problem(const DeblurSpec& spec);

}  // namespace tgreg
