#pragma once

#include "ika/feature_map.hpp"
#include "ika/kernels.hpp"
#include "ika/matrix.hpp"

namespace ika {

// Nystrom baseline. Eigendecomposes the landmark Gram matrix W(i, j) =
// K(w_i, w_j) and returns
//   psi(x)_i = lambda_i^{-1/2} sum_j U(j, i) K(w_j, x)
// for the top m eigenpairs, packaged as a FeatureMap over the kernel-centered
// basis on the landmarks so it is interchangeable with fit_ika output.
// Eigenvalues at or below n * eps * lambda_1 are dropped before truncation;
// if none survive the landmarks are degenerate.
FeatureMap fit_nystrom(const KernelSpec& kernel, const Matrix& landmarks, std::size_t output_dim);

}  // namespace ika
