#include "ika/ika.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ika/errors.hpp"

namespace ika {

Matrix build_basis_matrix(const BasisSet& basis, const Matrix& points) {
  const std::size_t count = points.rows();
  const std::size_t n = basis.size();
  Matrix b(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    basis.evaluate(points.row(i), b.row(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(b(i, j))) {
        throw Error("basis matrix: non-finite value at row " + std::to_string(i) +
                    ", basis function " + std::to_string(j));
      }
    }
  }
  return b;
}

SymmetricMatrix estimate_p(const Matrix& basis_matrix) {
  const std::size_t samples = basis_matrix.rows();
  const std::size_t n = basis_matrix.cols();
  if (samples == 0) throw std::invalid_argument("estimate_p: empty basis matrix");
  const double inv = 1.0 / static_cast<double>(samples);
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t h = 0; h < samples; ++h) {
        s += basis_matrix(h, i) * basis_matrix(h, j);
      }
      p(i, j) = s * inv;
    }
  }
  return SymmetricMatrix::from_upper(std::move(p));
}

SymmetricMatrix estimate_m(const Matrix& basis_matrix, const SymmetricMatrix& gram) {
  const std::size_t samples = basis_matrix.rows();
  const std::size_t n = basis_matrix.cols();
  if (samples == 0) throw std::invalid_argument("estimate_m: empty basis matrix");
  if (gram.order() != samples) {
    throw std::invalid_argument("estimate_m: Gram order does not match sample count");
  }
  const Matrix gb = matmul(gram.full(), basis_matrix);  // S x n
  const double inv = 1.0 / (static_cast<double>(samples) * static_cast<double>(samples));
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t h = 0; h < samples; ++h) {
        s += basis_matrix(h, i) * gb(h, j);
      }
      m(i, j) = s * inv;
    }
  }
  return SymmetricMatrix::from_upper(std::move(m));
}

namespace {

GeneralizedEigenSolution solve_with_jitter(const SymmetricMatrix& m, const SymmetricMatrix& p) {
  try {
    return solve_generalized_eig(m, p);
  } catch (const NotPositiveDefiniteError&) {
    // One retry only: duplicate-ish filters occur in practice and a jitter of
    // this size does not move eigenpairs that matter.
    const std::size_t n = p.order();
    const double jitter = 1e-10 * p.trace() / static_cast<double>(n);
    Matrix padded = p.full();
    for (std::size_t i = 0; i < n; ++i) padded(i, i) += jitter;
    try {
      return solve_generalized_eig(m, SymmetricMatrix::from_upper(std::move(padded)));
    } catch (const NotPositiveDefiniteError& second) {
      throw RankDeficientBasisError(
          second.pivot(),
          "fit: basis is rank deficient on the sample (Cholesky pivot " +
              std::to_string(second.pivot()) + " failed after jitter retry)");
    }
  }
}

}  // namespace

FeatureMap fit_ika(const KernelSpec& kernel, const Matrix& sample, const BasisSet& basis,
                   std::size_t output_dim) {
  const std::size_t n = basis.size();
  const std::size_t samples = sample.rows();
  if (output_dim < 1 || output_dim > n) {
    throw std::invalid_argument("fit_ika: output dimension must satisfy 1 <= m <= n");
  }
  if (samples == 0) throw std::invalid_argument("fit_ika: empty sample");
  if (sample.cols() != basis.input_dim()) {
    throw std::invalid_argument("fit_ika: sample dimension does not match basis");
  }

  const Matrix b = build_basis_matrix(basis, sample);
  const SymmetricMatrix p = estimate_p(b);
  SymmetricMatrix m;
  {
    // The S x S Gram matrix lives only inside this scope; everything after
    // works with n x n products.
    const SymmetricMatrix gram = build_gram(kernel, sample);
    m = estimate_m(b, gram);
  }

  GeneralizedEigenSolution solution = solve_with_jitter(m, p);

  const double top = solution.eigenvalues.front();
  const double clamp_floor = -1e-10 * std::abs(top);
  std::vector<double> eigenvalues(solution.eigenvalues.begin(),
                                  solution.eigenvalues.begin() + output_dim);
  for (double& value : eigenvalues) {
    if (value < clamp_floor) {
      throw Error("fit_ika: eigenvalue " + std::to_string(value) +
                  " below the round-off clamping floor; M~ is not numerically PSD");
    }
    if (value < 0.0) value = 0.0;
  }

  Matrix coefficients(n, output_dim);
  for (std::size_t j = 0; j < output_dim; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      coefficients(i, j) = solution.eigenvectors(i, j);
    }
  }
  return FeatureMap(basis, std::move(eigenvalues), std::move(coefficients));
}

}  // namespace ika
