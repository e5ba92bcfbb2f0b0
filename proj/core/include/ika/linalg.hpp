#pragma once

#include <vector>

#include "ika/matrix.hpp"

namespace ika {

struct SymEigResult {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // orthonormal, column i pairs with eigenvalues[i]
};

// Solution of M v = lambda P v with P symmetric positive definite.
// Eigenvalues are sorted descending and the eigenvector columns are
// P-orthonormal: v_i' P v_j = delta_ij.
struct GeneralizedEigenSolution {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // column i = v^(i)
};

// Lower-triangular L with L L' = A. Throws NotPositiveDefiniteError with the
// offending pivot index when a pivot falls at or below n * eps * max|A_ii|.
Matrix cholesky(const SymmetricMatrix& a);

// Dense symmetric eigendecomposition: Householder tridiagonalization followed
// by QL with implicit shifts, capped at 30 sweeps per eigenvalue
// (EigenConvergenceError beyond that). The component of largest magnitude in
// each eigenvector is made positive so outputs are reproducible.
SymEigResult sym_eig(const SymmetricMatrix& a);

// Reduction L^-1 M L^-T with L = cholesky(P), standard symmetric solve, then
// back-transformation of the eigenvectors.
GeneralizedEigenSolution solve_generalized_eig(const SymmetricMatrix& m, const SymmetricMatrix& p);

}  // namespace ika
