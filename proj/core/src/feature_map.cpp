#include "ika/feature_map.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "binary_io.hpp"
#include "ika/errors.hpp"

namespace ika {

namespace {

constexpr char kMagic[5] = "IKAF";
constexpr std::uint32_t kFormatVersion = 1;

enum BasisTag : std::uint32_t { kBasisKernelCentered = 0, kBasisMonomial = 1 };
enum KernelTag : std::uint32_t { kKernelGaussian = 0, kKernelLinear = 1, kKernelFiniteRank = 2 };

void write_kernel(std::ostream& out, const KernelSpec& kernel) {
  switch (kernel.kind()) {
    case KernelSpec::Kind::Gaussian:
      detail::put_u32(out, kKernelGaussian);
      detail::put_f64(out, kernel.sigma2());
      return;
    case KernelSpec::Kind::Linear:
      detail::put_u32(out, kKernelLinear);
      return;
    case KernelSpec::Kind::FiniteRank: {
      detail::put_u32(out, kKernelFiniteRank);
      const auto& components = kernel.components();
      detail::put_u32(out, static_cast<std::uint32_t>(components.size()));
      detail::put_u32(out, static_cast<std::uint32_t>(components.front().direction.size()));
      for (const auto& c : components) {
        detail::put_f64(out, c.weight);
        for (double v : c.direction) detail::put_f64(out, v);
      }
      return;
    }
  }
  throw Error("feature map write: unknown kernel kind");
}

KernelSpec read_kernel(std::istream& in) {
  const std::uint32_t tag = detail::get_u32(in, "kernel tag");
  switch (tag) {
    case kKernelGaussian:
      return KernelSpec::gaussian(detail::get_f64(in, "kernel sigma2"));
    case kKernelLinear:
      return KernelSpec::linear();
    case kKernelFiniteRank: {
      const std::uint32_t rank = detail::get_u32(in, "kernel rank");
      const std::uint32_t dim = detail::get_u32(in, "kernel dimension");
      std::vector<FiniteRankComponent> components(rank);
      for (auto& c : components) {
        c.weight = detail::get_f64(in, "kernel weight");
        c.direction.resize(dim);
        for (double& v : c.direction) v = detail::get_f64(in, "kernel direction");
      }
      return KernelSpec::finite_rank(std::move(components));
    }
    default:
      throw IoError(IoError::Kind::Malformed, "feature map: unknown kernel tag " + std::to_string(tag));
  }
}

void write_matrix_values(std::ostream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) detail::put_f64(out, m.data()[i]);
}

Matrix read_matrix_values(std::istream& in, std::size_t rows, std::size_t cols,
                          const std::string& what) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = detail::get_f64(in, what);
  return m;
}

}  // namespace

FeatureMap::FeatureMap(BasisSet basis, std::vector<double> eigenvalues, Matrix coefficients)
    : basis_(std::move(basis)),
      eigenvalues_(std::move(eigenvalues)),
      coefficients_(std::move(coefficients)) {
  const std::size_t n = basis_.size();
  const std::size_t m = eigenvalues_.size();
  if (m == 0) throw std::invalid_argument("feature map: needs at least one component");
  if (coefficients_.rows() != n || coefficients_.cols() != m) {
    throw std::invalid_argument("feature map: coefficient matrix must be n x m");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(eigenvalues_[i] >= 0.0) || !std::isfinite(eigenvalues_[i])) {
      throw std::invalid_argument("feature map: eigenvalues must be finite and >= 0");
    }
    if (i > 0 && eigenvalues_[i] > eigenvalues_[i - 1]) {
      throw std::invalid_argument("feature map: eigenvalues must be sorted descending");
    }
  }
  if (!coefficients_.all_finite()) {
    throw std::invalid_argument("feature map: coefficients must be finite");
  }

  scaled_rows_ = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double scale = std::sqrt(eigenvalues_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      scaled_rows_(i, j) = scale * coefficients_(j, i);
    }
  }
}

std::vector<double> FeatureMap::apply(std::span<const double> x) const {
  std::vector<double> out(output_dim());
  std::vector<double> scratch(basis_size());
  apply(x, out, scratch);
  return out;
}

void FeatureMap::apply(std::span<const double> x, std::span<double> out,
                       std::span<double> basis_scratch) const {
  basis_.evaluate(x, basis_scratch);
  for (std::size_t i = 0; i < output_dim(); ++i) {
    out[i] = dot(scaled_rows_.row(i), basis_scratch);
  }
}

void write_feature_map(std::ostream& out, const FeatureMap& map) {
  detail::put_magic(out, kMagic);
  detail::put_u32(out, kFormatVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(map.input_dim()));
  detail::put_u32(out, static_cast<std::uint32_t>(map.basis_size()));
  detail::put_u32(out, static_cast<std::uint32_t>(map.output_dim()));

  const BasisSet& basis = map.basis();
  if (basis.kind() == BasisSet::Kind::KernelCentered) {
    detail::put_u32(out, kBasisKernelCentered);
    write_matrix_values(out, basis.filters());
    write_kernel(out, basis.kernel());
  } else {
    detail::put_u32(out, kBasisMonomial);
    detail::put_u32(out, basis.includes_constant() ? 1 : 0);
  }

  for (double v : map.eigenvalues()) detail::put_f64(out, v);
  write_matrix_values(out, map.coefficients());
  if (!out) throw IoError(IoError::Kind::WriteFailed, "feature map: write failed");
}

FeatureMap read_feature_map(std::istream& in) {
  detail::check_magic(in, kMagic, "feature map");
  detail::check_version(in, kFormatVersion, "feature map");
  const std::uint32_t d = detail::get_u32(in, "feature map d");
  const std::uint32_t n = detail::get_u32(in, "feature map n");
  const std::uint32_t m = detail::get_u32(in, "feature map m");
  const std::uint32_t basis_tag = detail::get_u32(in, "feature map basis tag");

  std::optional<BasisSet> basis;
  if (basis_tag == kBasisKernelCentered) {
    Matrix filters = read_matrix_values(in, n, d, "feature map filters");
    KernelSpec kernel = read_kernel(in);
    basis = BasisSet::kernel_centered(std::move(kernel), std::move(filters));
  } else if (basis_tag == kBasisMonomial) {
    const bool include_constant = detail::get_u32(in, "feature map constant flag") != 0;
    basis = BasisSet::monomial(d, include_constant);
    if (basis->size() != n) {
      throw IoError(IoError::Kind::Malformed, "feature map: monomial size does not match n");
    }
  } else {
    throw IoError(IoError::Kind::Malformed,
                  "feature map: unknown basis tag " + std::to_string(basis_tag));
  }

  std::vector<double> eigenvalues(m);
  for (double& v : eigenvalues) v = detail::get_f64(in, "feature map eigenvalue");
  Matrix coefficients = read_matrix_values(in, n, m, "feature map coefficients");
  detail::check_eof(in, "feature map");
  return FeatureMap(std::move(*basis), std::move(eigenvalues), std::move(coefficients));
}

void save_feature_map(const std::filesystem::path& path, const FeatureMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string() + " for writing");
  write_feature_map(out, map);
  out.flush();
  if (!out) throw IoError(IoError::Kind::WriteFailed, "write failed for " + path.string());
}

FeatureMap load_feature_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string());
  return read_feature_map(in);
}

}  // namespace ika
