#include "ika/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ika/errors.hpp"
#include "ika/linalg.hpp"

namespace ika {

FeatureMap fit_nystrom(const KernelSpec& kernel, const Matrix& landmarks, std::size_t output_dim) {
  const std::size_t n = landmarks.rows();
  if (output_dim < 1 || output_dim > n) {
    throw std::invalid_argument("fit_nystrom: output dimension must satisfy 1 <= m <= n");
  }

  // Rejects duplicate landmarks up front.
  BasisSet basis = BasisSet::kernel_centered(kernel, landmarks);

  const SymmetricMatrix w = build_gram(kernel, landmarks);
  SymEigResult eig = sym_eig(w);

  const double top = eig.eigenvalues.front();
  const double drop = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * top;
  std::size_t kept = 0;
  while (kept < n && eig.eigenvalues[kept] > drop && eig.eigenvalues[kept] > 0.0) ++kept;
  if (kept == 0) {
    throw DegenerateLandmarksError("fit_nystrom: all landmark Gram eigenvalues below drop threshold");
  }

  const std::size_t m = std::min(output_dim, kept);
  std::vector<double> eigenvalues(eig.eigenvalues.begin(), eig.eigenvalues.begin() + m);
  Matrix coefficients(n, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double inv = 1.0 / eigenvalues[i];
    for (std::size_t j = 0; j < n; ++j) {
      coefficients(j, i) = eig.eigenvectors(j, i) * inv;
    }
  }
  return FeatureMap(std::move(basis), std::move(eigenvalues), std::move(coefficients));
}

}  // namespace ika
