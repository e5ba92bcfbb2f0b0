#pragma once

#include "ika/basis.hpp"
#include "ika/feature_map.hpp"
#include "ika/kernels.hpp"
#include "ika/linalg.hpp"
#include "ika/matrix.hpp"

namespace ika {

// B(i, j) = b_j(y_i) over the sample rows y_i.
Matrix build_basis_matrix(const BasisSet& basis, const Matrix& points);

// P~ = B'B / S. Symmetric positive definite whenever B has full column rank.
SymmetricMatrix estimate_p(const Matrix& basis_matrix);

// M~ = B'GB / S^2. Symmetric positive semidefinite whenever G is.
SymmetricMatrix estimate_m(const Matrix& basis_matrix, const SymmetricMatrix& gram);

// Fits a rank-m approximation of the kernel on a sample drawn from the data
// density:
//   1. G(i, j) = K(y_i, y_j)
//   2. B(i, j) = b_j(y_i)
//   3. P~ = B'B / S, M~ = B'GB / S^2
//   4. solve M~ v = lambda P~ v
//   5. psi(x)_i = sqrt(lambda_i) sum_j v_j^(i) b_j(x), top m pairs
// The full n-pair solve runs once and is truncated to m afterwards. If the
// Cholesky of P~ fails, one retry adds jitter eps = 1e-10 tr(P~)/n to the
// diagonal; a second failure raises RankDeficientBasisError. Eigenvalues in
// [-1e-10 lambda_1, 0) are clamped to zero, anything lower is an error.
FeatureMap fit_ika(const KernelSpec& kernel, const Matrix& sample, const BasisSet& basis,
                   std::size_t output_dim);

}  // namespace ika
