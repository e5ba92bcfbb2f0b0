#include "ika/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ika/errors.hpp"

namespace ika {

namespace {

bool finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

KernelSpec KernelSpec::gaussian(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("gaussian kernel: sigma2 must be positive and finite");
  }
  return KernelSpec(Kind::Gaussian, sigma2, {});
}

KernelSpec KernelSpec::linear() { return KernelSpec(Kind::Linear, 0.0, {}); }

KernelSpec KernelSpec::finite_rank(std::vector<FiniteRankComponent> components) {
  if (components.empty()) {
    throw std::invalid_argument("finite-rank kernel: component list is empty");
  }
  const std::size_t d = components.front().direction.size();
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw std::invalid_argument("finite-rank kernel: weights must be positive");
    }
    if (c.direction.size() != d || !finite(c.direction)) {
      throw std::invalid_argument("finite-rank kernel: directions must be finite, same dimension");
    }
  }
  constexpr double tol = 1e-12;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = i; j < components.size(); ++j) {
      const double g = dot(components[i].direction, components[j].direction);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expected) > tol) {
        throw std::invalid_argument("finite-rank kernel: directions must be orthonormal within 1e-12");
      }
    }
  }
  return KernelSpec(Kind::FiniteRank, 0.0, std::move(components));
}

double KernelSpec::eval(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernel eval: points have different dimensions");
  }
  if (!finite(x) || !finite(y)) {
    throw Error("kernel eval: non-finite input point");
  }
  switch (kind_) {
    case Kind::Gaussian:
      // Squared distance accumulated directly; the inner-product expansion
      // would cancel catastrophically for nearby points.
      return std::exp(-squared_distance(x, y) / (2.0 * sigma2_));
    case Kind::Linear:
      return dot(x, y);
    case Kind::FiniteRank: {
      if (x.size() != components_.front().direction.size()) {
        throw std::invalid_argument("kernel eval: point dimension does not match kernel directions");
      }
      double s = 0.0;
      for (const auto& c : components_) {
        s += c.weight * (dot(c.direction, x) * dot(c.direction, y));
      }
      return s;
    }
  }
  throw Error("kernel eval: unknown kernel kind");
}

SymmetricMatrix build_gram(const KernelSpec& kernel, const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      gram(i, j) = kernel.eval(points.row(i), points.row(j));
    }
  }
  return SymmetricMatrix::from_upper(std::move(gram));
}

}  // namespace ika
