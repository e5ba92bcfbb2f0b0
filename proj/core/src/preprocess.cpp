#include "ika/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ika/errors.hpp"
#include "ika/linalg.hpp"
#include "ika/rng.hpp"

namespace ika {

ImageSet global_contrast_normalize(const ImageSet& images) {
  ImageSet out = images;
  const std::size_t stride = images.values_per_image();
  if (stride == 0) return out;
  for (std::size_t i = 0; i < images.count; ++i) {
    double* values = out.data.data() + i * stride;
    double mean = 0.0;
    for (std::size_t v = 0; v < stride; ++v) mean += values[v];
    mean /= static_cast<double>(stride);
    double var = 0.0;
    for (std::size_t v = 0; v < stride; ++v) {
      const double c = values[v] - mean;
      var += c * c;
    }
    var /= static_cast<double>(stride);
    const double denom = std::sqrt(var + 10.0);
    for (std::size_t v = 0; v < stride; ++v) values[v] = (values[v] - mean) / denom;
  }
  return out;
}

Matrix sample_patches(const ImageSet& images, std::size_t patch_h, std::size_t patch_w,
                      std::size_t count, std::uint64_t seed) {
  if (patch_h == 0 || patch_w == 0) {
    throw std::invalid_argument("sample_patches: patch size must be positive");
  }
  if (patch_h > images.height || patch_w > images.width) {
    throw std::invalid_argument("sample_patches: patch does not fit inside the images");
  }
  const std::size_t dim = patch_h * patch_w * images.channels;
  Matrix patches(count, dim);
  if (count == 0) return patches;
  if (images.count == 0) throw std::invalid_argument("sample_patches: empty image set");

  Rng rng(seed);
  const std::size_t max_y = images.height - patch_h + 1;
  const std::size_t max_x = images.width - patch_w + 1;
  for (std::size_t p = 0; p < count; ++p) {
    const std::size_t image = rng.uniform_index(images.count);
    const std::size_t top = rng.uniform_index(max_y);
    const std::size_t left = rng.uniform_index(max_x);
    std::size_t out = 0;
    for (std::size_t y = 0; y < patch_h; ++y) {
      for (std::size_t x = 0; x < patch_w; ++x) {
        for (std::size_t c = 0; c < images.channels; ++c) {
          patches(p, out++) = images.at(image, top + y, left + x, c);
        }
      }
    }
  }
  return patches;
}

std::vector<double> WhiteningTransform::apply(std::span<const double> x) const {
  const std::size_t d = mean.size();
  if (x.size() != d) throw std::invalid_argument("whitening: point dimension mismatch");
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < d; ++i) centered[i] = x[i] - mean[i];
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = dot(projection.row(i), centered);
  }
  return out;
}

Matrix WhiteningTransform::apply_rows(const Matrix& x) const {
  Matrix out(x.rows(), mean.size());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto transformed = apply(x.row(r));
    std::copy(transformed.begin(), transformed.end(), out.row(r).begin());
  }
  return out;
}

namespace {

WhiteningTransform fit_whitening_impl(const Matrix& patches, double epsilon, bool auto_epsilon) {
  const std::size_t count = patches.rows();
  const std::size_t d = patches.cols();
  if (count < 2) throw std::invalid_argument("fit_pca_whitening: needs at least two patches");

  std::vector<double> mean(d, 0.0);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t c = 0; c < d; ++c) mean[c] += patches(r, c);
  }
  for (double& v : mean) v /= static_cast<double>(count);

  // Population covariance of the centered patches.
  Matrix cov(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < count; ++r) {
        s += (patches(r, i) - mean[i]) * (patches(r, j) - mean[j]);
      }
      cov(i, j) = s / static_cast<double>(count);
    }
  }
  SymEigResult eig = sym_eig(SymmetricMatrix::from_upper(std::move(cov)));

  if (auto_epsilon) {
    double mean_eigenvalue = 0.0;
    for (double v : eig.eigenvalues) mean_eigenvalue += std::max(v, 0.0);
    mean_eigenvalue /= static_cast<double>(d);
    epsilon = 1e-5 * mean_eigenvalue;
    if (epsilon <= 0.0) epsilon = 1e-12;  // fully degenerate data, e.g. constant images
  }

  const double zero_tol = static_cast<double>(d) * std::numeric_limits<double>::epsilon() *
                          std::max(eig.eigenvalues.front(), 0.0);
  std::vector<double> scales(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double shifted = eig.eigenvalues[i] + epsilon;
    if (shifted <= zero_tol) {
      throw Error("fit_pca_whitening: zero-variance component " + std::to_string(i) +
                  " with epsilon " + std::to_string(epsilon) + "; use a positive epsilon");
    }
    scales[i] = 1.0 / std::sqrt(shifted);
  }

  // Projection row i = scaled i-th eigenvector (eigenvectors are columns).
  Matrix projection(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      projection(i, j) = scales[i] * eig.eigenvectors(j, i);
    }
  }
  return WhiteningTransform{std::move(mean), std::move(projection), epsilon};
}

}  // namespace

WhiteningTransform fit_pca_whitening(const Matrix& patches, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("fit_pca_whitening: epsilon must be >= 0");
  return fit_whitening_impl(patches, epsilon, false);
}

WhiteningTransform fit_pca_whitening(const Matrix& patches) {
  return fit_whitening_impl(patches, 0.0, true);
}

NormalizeResult unit_normalize_rows(const Matrix& x) {
  NormalizeResult result{x, 0};
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const double norm = std::sqrt(dot(x.row(r), x.row(r)));
    if (norm < 1e-12) {
      ++result.zero_rows;
      continue;
    }
    for (std::size_t c = 0; c < x.cols(); ++c) result.data(r, c) /= norm;
  }
  return result;
}

namespace {

std::size_t nearest_centroid(const Matrix& centroids, std::span<const double> point,
                             double* distance = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_distance(centroids.row(c), point);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

// k-means++ seeding: first centre uniform, the rest D^2-weighted. A zero
// total weight (all candidates coincide with a centre) falls back to a
// uniform draw.
Matrix kmeans_pp_init(const Matrix& x, std::span<const std::size_t> candidates, std::size_t k,
                      Rng& rng) {
  const std::size_t d = x.cols();
  Matrix centroids(k, d);
  std::vector<double> min_d(candidates.size(), std::numeric_limits<double>::infinity());

  std::size_t first = candidates[rng.uniform_index(candidates.size())];
  std::copy(x.row(first).begin(), x.row(first).end(), centroids.row(0).begin());

  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double dist = squared_distance(x.row(candidates[i]), centroids.row(c - 1));
      min_d[i] = std::min(min_d[i], dist);
      total += min_d[i];
    }
    std::size_t chosen = candidates[0];
    if (total > 0.0) {
      double target = rng.next_double() * total;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (min_d[i] <= 0.0) continue;
        chosen = candidates[i];
        target -= min_d[i];
        if (target <= 0.0) break;
      }
    } else {
      chosen = candidates[rng.uniform_index(candidates.size())];
    }
    std::copy(x.row(chosen).begin(), x.row(chosen).end(), centroids.row(c).begin());
  }
  return centroids;
}

double batch_objective(const Matrix& centroids, const Matrix& x,
                       std::span<const std::size_t> batch) {
  double total = 0.0;
  for (std::size_t index : batch) {
    double d = 0.0;
    nearest_centroid(centroids, x.row(index), &d);
    total += d;
  }
  return total / static_cast<double>(batch.size());
}

}  // namespace

Matrix minibatch_kmeans(const Matrix& x, std::size_t k, std::size_t batch, std::size_t iters,
                        std::uint64_t seed, std::vector<double>* objective_trace) {
  const std::size_t rows = x.rows();
  if (k == 0 || k > rows) throw std::invalid_argument("minibatch_kmeans: need 1 <= k <= rows");
  if (batch == 0) throw std::invalid_argument("minibatch_kmeans: batch must be positive");

  Rng rng(seed);

  // k-means++ on a subsample; the full data set is not scanned at init time.
  const std::size_t init_size = std::min(rows, std::max(batch, 10 * k));
  std::vector<std::size_t> init_sample = sample_without_replacement(rows, init_size, rng);
  Matrix centroids = kmeans_pp_init(x, init_sample, k, rng);

  // One batch is drawn up front and reused every iteration: it is both the
  // sample the centroids are fit to and the set the objective trace measures.
  // Re-sampling per iteration would make the traced objective fluctuate with
  // batch noise; a fixed batch keeps it non-increasing (see below).
  std::vector<std::size_t> members(std::min(batch, rows));
  for (auto& index : members) index = rng.uniform_index(rows);

  std::vector<std::size_t> counts(k, 0);
  std::vector<std::size_t> assign(members.size());
  Matrix sums(k, x.cols());
  std::vector<std::size_t> batch_counts(k);
  for (std::size_t iter = 0; iter < iters; ++iter) {
    if (objective_trace) objective_trace->push_back(batch_objective(centroids, x, members));
    std::fill(sums.data(), sums.data() + sums.size(), 0.0);
    std::fill(batch_counts.begin(), batch_counts.end(), 0);
    for (std::size_t b = 0; b < members.size(); ++b) {
      assign[b] = nearest_centroid(centroids, x.row(members[b]));
      const auto point = x.row(members[b]);
      auto sum = sums.row(assign[b]);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += point[j];
      batch_counts[assign[b]] += 1;
    }
    // Move each centroid toward the mean of its assignees by n_c/count_c,
    // the aggregate form of per-point 1/count steps. The step factor lies in
    // (0, 1], so with assignments fixed the quadratic objective cannot grow,
    // and the subsequent re-assignment only lowers it further.
    for (std::size_t c = 0; c < k; ++c) {
      if (batch_counts[c] == 0) continue;
      counts[c] += batch_counts[c];
      const double step = static_cast<double>(batch_counts[c]) / static_cast<double>(counts[c]);
      const double inv = 1.0 / static_cast<double>(batch_counts[c]);
      auto row = centroids.row(c);
      const auto sum = sums.row(c);
      for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] += step * (sum[j] * inv - row[j]);
      }
    }
  }
  if (objective_trace) objective_trace->push_back(batch_objective(centroids, x, members));

  // Clusters that stayed empty across all iterations restart from data rows.
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0 && iters > 0) {
      const std::size_t pick = rng.uniform_index(rows);
      std::copy(x.row(pick).begin(), x.row(pick).end(), centroids.row(c).begin());
    }
  }

  return unit_normalize_rows(centroids).data;
}

double nearest_rank_percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("nearest_rank_percentile: empty values");
  if (!(q > 0.0) || !(q < 100.0)) {
    throw std::invalid_argument("nearest_rank_percentile: q must lie in (0, 100)");
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

double percentile_sigma2(const Matrix& x, double q, std::size_t pair_count, std::uint64_t seed) {
  const std::size_t rows = x.rows();
  if (rows < 2) throw std::invalid_argument("percentile_sigma2: needs at least two points");
  if (pair_count < 1) throw std::invalid_argument("percentile_sigma2: pair_count must be positive");

  const std::size_t all_ordered = rows * (rows - 1);
  std::vector<double> distances;
  if (pair_count >= all_ordered) {
    distances.reserve(all_ordered);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < rows; ++j) {
        if (i != j) distances.push_back(squared_distance(x.row(i), x.row(j)));
      }
    }
  } else {
    distances.reserve(pair_count);
    Rng rng(seed);
    for (std::size_t p = 0; p < pair_count; ++p) {
      const std::size_t i = rng.uniform_index(rows);
      std::size_t j = rng.uniform_index(rows - 1);
      if (j >= i) ++j;
      distances.push_back(squared_distance(x.row(i), x.row(j)));
    }
  }
  return nearest_rank_percentile(std::move(distances), q);
}

}  // namespace ika
