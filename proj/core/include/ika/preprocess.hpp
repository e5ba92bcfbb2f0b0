#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ika/matrix.hpp"

namespace ika {

// Channel-last image stack: value (i, y, x, c) lives at
// ((i * height + y) * width + x) * channels + c.
struct ImageSet {
  std::size_t count = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<double> data;

  std::size_t values_per_image() const { return height * width * channels; }
  double at(std::size_t i, std::size_t y, std::size_t x, std::size_t c) const {
    return data[((i * height + y) * width + x) * channels + c];
  }
  double& at(std::size_t i, std::size_t y, std::size_t x, std::size_t c) {
    return data[((i * height + y) * width + x) * channels + c];
  }
};

// Per-image centering and scaling: I = (I~ - mean) / sqrt(var + 10), with
// population (1/N) variance. The +10 keeps the denominator >= sqrt(10), so a
// constant image maps to zeros rather than dividing by zero.
ImageSet global_contrast_normalize(const ImageSet& images);

// `count` patches of size patch_h x patch_w, each drawn as (uniform image,
// uniform valid top-left corner), flattened row-major channel-last.
Matrix sample_patches(const ImageSet& images, std::size_t patch_h, std::size_t patch_w,
                      std::size_t count, std::uint64_t seed);

// x -> (Lambda + eps I)^{-1/2} E' (x - mean): project on the covariance
// eigenbasis and rescale each component to unit variance.
struct WhiteningTransform {
  std::vector<double> mean;
  Matrix projection;  // d x d
  double epsilon = 0.0;

  std::vector<double> apply(std::span<const double> x) const;
  Matrix apply_rows(const Matrix& x) const;
};

WhiteningTransform fit_pca_whitening(const Matrix& patches, double epsilon);

// Epsilon defaulted to 1e-5 times the mean covariance eigenvalue.
WhiteningTransform fit_pca_whitening(const Matrix& patches);

struct NormalizeResult {
  Matrix data;
  std::size_t zero_rows = 0;  // rows with norm < 1e-12, left untouched
};

NormalizeResult unit_normalize_rows(const Matrix& x);

// Mini-batch k-means with k-means++ initialization on a subsample and
// per-centroid 1/count learning rates. A batch of `batch` rows is drawn once;
// each iteration assigns it to nearest centroids and moves every centroid
// part-way toward the mean of its assignees, which keeps the batch objective
// non-increasing. Output rows are unit-normalized. Centroids that never
// receive a point are reseeded from random data rows at the end. When
// objective_trace is given, it receives the mean squared distance of the batch
// to its nearest centroid, recorded before each iteration's update and once
// after the last (values are pre-normalization).
Matrix minibatch_kmeans(const Matrix& x, std::size_t k, std::size_t batch, std::size_t iters,
                        std::uint64_t seed, std::vector<double>* objective_trace = nullptr);

// The q-th percentile by the nearest-rank rule: the ceil(q/100 * N)-th value
// in ascending order.
double nearest_rank_percentile(std::vector<double> values, double q);

// Percentile of |x_i - x_j|^2 over random point pairs (i != j). When
// pair_count covers every ordered pair, all pairs are enumerated exactly once
// instead of sampled.
double percentile_sigma2(const Matrix& x, double q, std::size_t pair_count, std::uint64_t seed);

}  // namespace ika
