#include "ika/dataio.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "binary_io.hpp"
#include "ika/errors.hpp"
#include "ika/rng.hpp"

namespace ika {

Matrix generate_gaussian_mixture(const std::vector<MixtureComponent>& components,
                                 std::size_t count, std::uint64_t seed) {
  if (components.empty()) {
    throw std::invalid_argument("generate_gaussian_mixture: no components");
  }
  const std::size_t dim = components.front().mean.size();
  if (dim == 0) throw std::invalid_argument("generate_gaussian_mixture: zero-dimensional mean");
  for (const auto& component : components) {
    if (component.mean.size() != dim) {
      throw std::invalid_argument("generate_gaussian_mixture: mean dimensions differ");
    }
    if (!(component.scale > 0.0) || !std::isfinite(component.scale)) {
      throw std::invalid_argument("generate_gaussian_mixture: scales must be positive");
    }
    for (double v : component.mean) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("generate_gaussian_mixture: non-finite mean");
      }
    }
  }

  Matrix points(count, dim);
  Rng rng(seed);
  for (std::size_t r = 0; r < count; ++r) {
    const auto& component = components[rng.uniform_index(components.size())];
    for (std::size_t c = 0; c < dim; ++c) {
      points(r, c) = component.mean[c] + component.scale * rng.normal();
    }
  }
  return points;
}

ImageSet generate_synthetic_images(std::size_t count, std::size_t height, std::size_t width,
                                   std::size_t channels, std::uint64_t seed) {
  if (height == 0 || width == 0 || channels == 0) {
    throw std::invalid_argument("generate_synthetic_images: dimensions must be positive");
  }
  ImageSet images;
  images.count = count;
  images.height = height;
  images.width = width;
  images.channels = channels;
  images.data.assign(count * height * width * channels, 0.0);

  constexpr std::size_t kWaves = 4;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t wave = 0; wave < kWaves; ++wave) {
        const double amplitude = rng.normal();
        const double freq_y = 0.5 + 2.5 * rng.next_double();
        const double freq_x = 0.5 + 2.5 * rng.next_double();
        const double phase = kTwoPi * rng.next_double();
        for (std::size_t y = 0; y < height; ++y) {
          for (std::size_t x = 0; x < width; ++x) {
            const double arg = kTwoPi * (freq_y * static_cast<double>(y) / static_cast<double>(height) +
                                         freq_x * static_cast<double>(x) / static_cast<double>(width)) +
                               phase;
            images.at(i, y, x, c) += amplitude * std::sin(arg);
          }
        }
      }
    }
  }
  return images;
}

namespace {

constexpr char kPatchMagic[5] = "IKAP";
constexpr std::uint32_t kPatchVersion = 1;
constexpr char kWhiteningMagic[5] = "IKAW";
constexpr std::uint32_t kWhiteningVersion = 1;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string());
  return file;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string());
  return file;
}

void finish_write(std::ofstream& file, const std::filesystem::path& path) {
  file.flush();
  if (!file.good()) throw IoError(IoError::Kind::WriteFailed, "write failed for " + path.string());
}

}  // namespace

void write_patches(const std::filesystem::path& path, const Matrix& x) {
  auto file = open_for_write(path);
  detail::put_magic(file, kPatchMagic);
  detail::put_u32(file, kPatchVersion);
  detail::put_u64(file, x.rows());
  detail::put_u32(file, static_cast<std::uint32_t>(x.cols()));
  for (std::size_t i = 0; i < x.size(); ++i) detail::put_f64(file, x.data()[i]);
  finish_write(file, path);
}

Matrix read_patches(const std::filesystem::path& path) {
  auto file = open_for_read(path);
  detail::check_magic(file, kPatchMagic, "patches");
  detail::check_version(file, kPatchVersion, "patches");
  const std::uint64_t rows = detail::get_u64(file, "patch row count");
  const std::uint32_t cols = detail::get_u32(file, "patch column count");
  Matrix x(rows, cols);
  for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = detail::get_f64(file, "patch data");
  detail::check_eof(file, "patches");
  return x;
}

void write_image_set(const std::filesystem::path& dir, const ImageSet& images) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(IoError::Kind::OpenFailed, "cannot create " + dir.string());

  {
    auto header = open_for_write(dir / "header.txt");
    header << images.count << '\n'
           << images.height << '\n'
           << images.width << '\n'
           << images.channels << '\n';
    finish_write(header, dir / "header.txt");
  }

  auto file = open_for_write(dir / "images.bin");
  for (std::size_t i = 0; i < images.count; ++i) {
    for (std::size_t c = 0; c < images.channels; ++c) {
      for (std::size_t y = 0; y < images.height; ++y) {
        for (std::size_t x = 0; x < images.width; ++x) {
          detail::put_f64(file, images.at(i, y, x, c));
        }
      }
    }
  }
  finish_write(file, dir / "images.bin");
}

ImageSet read_image_set(const std::filesystem::path& dir) {
  ImageSet images;
  {
    auto header = open_for_read(dir / "header.txt");
    std::size_t* fields[] = {&images.count, &images.height, &images.width, &images.channels};
    std::string line;
    for (std::size_t* field : fields) {
      if (!std::getline(header, line)) {
        throw IoError(IoError::Kind::Malformed, "image header: missing line");
      }
      std::istringstream parser(line);
      if (!(parser >> *field)) {
        throw IoError(IoError::Kind::Malformed, "image header: not an integer: " + line);
      }
    }
  }
  if (images.height == 0 || images.width == 0 || images.channels == 0) {
    throw IoError(IoError::Kind::Malformed, "image header: zero dimension");
  }

  auto file = open_for_read(dir / "images.bin");
  images.data.assign(images.count * images.values_per_image(), 0.0);
  for (std::size_t i = 0; i < images.count; ++i) {
    for (std::size_t c = 0; c < images.channels; ++c) {
      for (std::size_t y = 0; y < images.height; ++y) {
        for (std::size_t x = 0; x < images.width; ++x) {
          images.at(i, y, x, c) = detail::get_f64(file, "image data");
        }
      }
    }
  }
  detail::check_eof(file, "images");
  return images;
}

void write_whitening(const std::filesystem::path& path, const WhiteningTransform& transform) {
  const std::size_t d = transform.mean.size();
  if (transform.projection.rows() != d || transform.projection.cols() != d) {
    throw std::invalid_argument("write_whitening: projection shape mismatch");
  }
  auto file = open_for_write(path);
  detail::put_magic(file, kWhiteningMagic);
  detail::put_u32(file, kWhiteningVersion);
  detail::put_u32(file, static_cast<std::uint32_t>(d));
  detail::put_f64(file, transform.epsilon);
  for (double v : transform.mean) detail::put_f64(file, v);
  for (std::size_t i = 0; i < transform.projection.size(); ++i) {
    detail::put_f64(file, transform.projection.data()[i]);
  }
  finish_write(file, path);
}

WhiteningTransform read_whitening(const std::filesystem::path& path) {
  auto file = open_for_read(path);
  detail::check_magic(file, kWhiteningMagic, "whitening");
  detail::check_version(file, kWhiteningVersion, "whitening");
  const std::uint32_t d = detail::get_u32(file, "whitening dimension");
  WhiteningTransform transform;
  transform.epsilon = detail::get_f64(file, "whitening epsilon");
  transform.mean.resize(d);
  for (double& v : transform.mean) v = detail::get_f64(file, "whitening mean");
  transform.projection = Matrix(d, d);
  for (std::size_t i = 0; i < transform.projection.size(); ++i) {
    transform.projection.data()[i] = detail::get_f64(file, "whitening projection");
  }
  detail::check_eof(file, "whitening");
  return transform;
}

}  // namespace ika
