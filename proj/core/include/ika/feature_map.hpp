#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ika/basis.hpp"
#include "ika/matrix.hpp"

namespace ika {

// Low-rank approximation psi: R^d -> R^m of a kernel,
//   psi(x)_i = sqrt(lambda_i) * sum_j V(j, i) b_j(x),
// with eigenvalues sorted descending and all >= 0.
class FeatureMap {
 public:
  // coefficients is n x m, column i holding the coefficient vector of the
  // i-th component. Throws std::invalid_argument on shape mismatch, negative
  // or ascending eigenvalues.
  FeatureMap(BasisSet basis, std::vector<double> eigenvalues, Matrix coefficients);

  std::size_t output_dim() const { return eigenvalues_.size(); }  // m
  std::size_t input_dim() const { return basis_.input_dim(); }    // d
  std::size_t basis_size() const { return basis_.size(); }        // n

  const BasisSet& basis() const { return basis_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const Matrix& coefficients() const { return coefficients_; }

  std::vector<double> apply(std::span<const double> x) const;

  // Allocation-free variant for hot loops; basis_scratch.size() == n,
  // out.size() == m.
  void apply(std::span<const double> x, std::span<double> out,
             std::span<double> basis_scratch) const;

 private:
  BasisSet basis_;
  std::vector<double> eigenvalues_;
  Matrix coefficients_;
  Matrix scaled_rows_;  // m x n, row i = sqrt(lambda_i) * V(:, i)
};

// Binary "IKAF" serialization; the round trip is bit-exact.
void write_feature_map(std::ostream& out, const FeatureMap& map);
FeatureMap read_feature_map(std::istream& in);
void save_feature_map(const std::filesystem::path& path, const FeatureMap& map);
FeatureMap load_feature_map(const std::filesystem::path& path);

}  // namespace ika
