#include "ika/basis.hpp"

#include <stdexcept>
#include <string>

namespace ika {

BasisSet BasisSet::kernel_centered(KernelSpec kernel, Matrix filters) {
  if (filters.rows() == 0 || filters.cols() == 0) {
    throw std::invalid_argument("kernel-centered basis: filter matrix is empty");
  }
  if (!filters.all_finite()) {
    throw std::invalid_argument("kernel-centered basis: filters must be finite");
  }
  for (std::size_t i = 0; i < filters.rows(); ++i) {
    for (std::size_t j = i + 1; j < filters.rows(); ++j) {
      bool equal = true;
      for (std::size_t k = 0; k < filters.cols(); ++k) {
        if (filters(i, k) != filters(j, k)) {
          equal = false;
          break;
        }
      }
      if (equal) {
        throw std::invalid_argument("kernel-centered basis: duplicate filter rows " +
                                    std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  const std::size_t dim = filters.cols();
  return BasisSet(Kind::KernelCentered, std::move(kernel), std::move(filters), dim, false);
}

BasisSet BasisSet::monomial(std::size_t dim, bool include_constant) {
  if (dim == 0) throw std::invalid_argument("monomial basis: dimension must be positive");
  return BasisSet(Kind::Monomial, KernelSpec::linear(), Matrix(), dim, include_constant);
}

std::size_t BasisSet::size() const {
  if (kind_ == Kind::KernelCentered) return filters_.rows();
  return dim_ + (include_constant_ ? 1 : 0);
}

std::size_t BasisSet::input_dim() const { return dim_; }

void BasisSet::evaluate(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("basis evaluate: point dimension mismatch");
  }
  if (kind_ == Kind::KernelCentered) {
    for (std::size_t i = 0; i < filters_.rows(); ++i) {
      out[i] = kernel_.eval(filters_.row(i), x);
    }
  } else {
    for (std::size_t j = 0; j < dim_; ++j) out[j] = x[j];
    if (include_constant_) out[dim_] = 1.0;
  }
}

double BasisSet::evaluate_one(std::size_t j, std::span<const double> x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("basis evaluate: point dimension mismatch");
  }
  if (kind_ == Kind::KernelCentered) {
    return kernel_.eval(filters_.row(j), x);
  }
  return j < dim_ ? x[j] : 1.0;
}

const KernelSpec& BasisSet::kernel() const {
  if (kind_ != Kind::KernelCentered) {
    throw std::logic_error("basis: kernel() is only defined for the kernel-centered variant");
  }
  return kernel_;
}

const Matrix& BasisSet::filters() const {
  if (kind_ != Kind::KernelCentered) {
    throw std::logic_error("basis: filters() is only defined for the kernel-centered variant");
  }
  return filters_;
}

}  // namespace ika
