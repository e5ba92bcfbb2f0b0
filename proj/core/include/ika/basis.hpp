#pragma once

#include <cstddef>
#include <span>

#include "ika/kernels.hpp"
#include "ika/matrix.hpp"

namespace ika {

// A set of n linearly independent real-valued functions b_1..b_n on R^d.
// Two variants ship: kernel-centered functions b_i(x) = K(w_i, x) over a
// filter matrix W, and degree-1 monomials (coordinates, optionally plus a
// constant). The enum leaves room for other families without touching the
// fitting code, which only sees evaluate().
class BasisSet {
 public:
  enum class Kind { KernelCentered, Monomial };

  // b_i(x) = K(filters.row(i), x). Exact duplicate filter rows are rejected:
  // they make the basis matrix rank deficient by construction.
  static BasisSet kernel_centered(KernelSpec kernel, Matrix filters);

  // b_j(x) = x_j for j < dim, plus b_dim(x) = 1 when include_constant.
  static BasisSet monomial(std::size_t dim, bool include_constant);

  Kind kind() const { return kind_; }
  std::size_t size() const;       // n
  std::size_t input_dim() const;  // d

  // Evaluates all n basis functions at x into out (out.size() == n).
  void evaluate(std::span<const double> x, std::span<double> out) const;
  double evaluate_one(std::size_t j, std::span<const double> x) const;

  // Kernel-centered accessors; invalid for the monomial variant.
  const KernelSpec& kernel() const;
  const Matrix& filters() const;

  bool includes_constant() const { return include_constant_; }

 private:
  BasisSet(Kind kind, KernelSpec kernel, Matrix filters, std::size_t dim, bool include_constant)
      : kind_(kind),
        kernel_(std::move(kernel)),
        filters_(std::move(filters)),
        dim_(dim),
        include_constant_(include_constant) {}

  Kind kind_;
  KernelSpec kernel_;
  Matrix filters_;
  std::size_t dim_ = 0;
  bool include_constant_ = false;
};

}  // namespace ika
