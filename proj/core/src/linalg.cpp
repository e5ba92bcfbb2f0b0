#include "ika/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ika/errors.hpp"

namespace ika {

namespace {

constexpr int kMaxQlSweeps = 30;

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transform in z (EISPACK tred2 lineage).
void tridiagonalize(Matrix& z, std::vector<double>& diag, std::vector<double>& sub) {
  const std::size_t n = z.rows();
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        sub[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        sub[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          sub[j] = g / h;
          f += sub[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          g = sub[j] - hh * f;
          sub[j] = g;
          for (std::size_t k = 0; k <= j; ++k) {
            z(j, k) -= f * sub[k] + g * z(i, k);
          }
        }
      }
    } else {
      sub[i] = z(i, l);
    }
    diag[i] = h;
  }
  diag[0] = 0.0;
  sub[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
        for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
      }
    }
    diag[i] = z(i, i);
    z(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      z(j, i) = 0.0;
      z(i, j) = 0.0;
    }
  }
}

// QL iteration with implicit shifts on a tridiagonal matrix, rotations
// applied to the accumulated transform z.
void ql_implicit_shift(std::vector<double>& diag, std::vector<double>& sub, Matrix& z) {
  const std::size_t n = diag.size();
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < n; ++i) sub[i - 1] = sub[i];
  sub[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iterations > kMaxQlSweeps) {
          throw EigenConvergenceError(
              iterations - 1, "sym_eig: QL iteration failed to converge after " +
                                  std::to_string(kMaxQlSweeps) + " sweeps");
        }
        double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
        double r = std::hypot(g, 1.0);
        g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * sub[i];
          const double b = c * sub[i];
          r = std::hypot(f, g);
          sub[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            sub[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (underflow) continue;
        diag[l] -= p;
        sub[l] = g;
        sub[m] = 0.0;
      }
    } while (m != l);
  }
}

// Largest-magnitude component of each column made positive (earliest index
// wins ties) so repeated runs and golden files agree.
void apply_sign_convention(Matrix& vectors) {
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (vectors(pivot, j) < 0.0) {
      for (std::size_t i = 0; i < vectors.rows(); ++i) vectors(i, j) = -vectors(i, j);
    }
  }
}

void sort_descending(std::vector<double>& values, Matrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> sorted_values(n);
  Matrix sorted_vectors(vectors.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted_values[j] = values[order[j]];
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
      sorted_vectors(i, j) = vectors(i, order[j]);
    }
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

// Solves L X = B for lower-triangular L.
Matrix forward_substitute(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  Matrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  return x;
}

// Solves L' X = B for lower-triangular L.
Matrix back_substitute_transposed(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  Matrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  return x;
}

}  // namespace

Matrix cholesky(const SymmetricMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) throw std::invalid_argument("cholesky: empty matrix");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
  const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;

  Matrix l(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (pivot <= tol) {
      throw NotPositiveDefiniteError(
          j, "cholesky: matrix not positive definite at pivot " + std::to_string(j));
    }
    l(j, j) = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

SymEigResult sym_eig(const SymmetricMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) throw std::invalid_argument("sym_eig: empty matrix");

  Matrix z = a.full();
  std::vector<double> diag(n, 0.0);
  std::vector<double> sub(n, 0.0);
  if (n == 1) {
    diag[0] = z(0, 0);
    z(0, 0) = 1.0;
  } else {
    tridiagonalize(z, diag, sub);
    ql_implicit_shift(diag, sub, z);
  }
  sort_descending(diag, z);
  apply_sign_convention(z);
  return SymEigResult{std::move(diag), std::move(z)};
}

GeneralizedEigenSolution solve_generalized_eig(const SymmetricMatrix& m, const SymmetricMatrix& p) {
  if (m.order() != p.order()) {
    throw std::invalid_argument("solve_generalized_eig: operand orders disagree");
  }
  const Matrix l = cholesky(p);

  // C = L^-1 M L^-T, assembled through two triangular solves and then
  // symmetrized exactly so the symmetric solver sees a true SymmetricMatrix.
  const Matrix w = forward_substitute(l, m.full());
  Matrix c = forward_substitute(l, transpose(w));
  SymEigResult reduced = sym_eig(SymmetricMatrix::from_upper(std::move(c)));

  Matrix vectors = back_substitute_transposed(l, reduced.eigenvectors);
  apply_sign_convention(vectors);
  return GeneralizedEigenSolution{std::move(reduced.eigenvalues), std::move(vectors)};
}

}  // namespace ika
