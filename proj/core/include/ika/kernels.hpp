#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ika/matrix.hpp"

namespace ika {

struct FiniteRankComponent {
  double weight;                  // > 0
  std::vector<double> direction;  // unit vector
};

// A symmetric positive (semi)definite kernel. Evaluation is bit-exact under
// argument swap: K(x, y) == K(y, x) down to the last ulp.
class KernelSpec {
 public:
  enum class Kind { Gaussian, Linear, FiniteRank };

  // exp(-|x - y|^2 / (2 sigma2)), sigma2 > 0.
  static KernelSpec gaussian(double sigma2);

  // <x, y>.
  static KernelSpec linear();

  // sum_i w_i (u_i.x)(u_i.y) with w_i > 0 and mutually orthonormal u_i.
  static KernelSpec finite_rank(std::vector<FiniteRankComponent> components);

  Kind kind() const { return kind_; }
  double sigma2() const { return sigma2_; }
  const std::vector<FiniteRankComponent>& components() const { return components_; }

  // Rank of the finite-rank variant; 0 for the others (meaning "not finite rank").
  std::size_t rank() const { return components_.size(); }

  double eval(std::span<const double> x, std::span<const double> y) const;

 private:
  KernelSpec(Kind kind, double sigma2, std::vector<FiniteRankComponent> components)
      : kind_(kind), sigma2_(sigma2), components_(std::move(components)) {}

  Kind kind_;
  double sigma2_;
  std::vector<FiniteRankComponent> components_;
};

// Gram matrix G(i, j) = K(p_i, p_j). Only the upper triangle is evaluated and
// then mirrored, so symmetry is bit-exact by construction.
SymmetricMatrix build_gram(const KernelSpec& kernel, const Matrix& points);

}  // namespace ika
