#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ika/matrix.hpp"
#include "ika/preprocess.hpp"

namespace ika {

struct MixtureComponent {
  std::vector<double> mean;
  double scale = 1.0;  // isotropic standard deviation
};

// count points: component chosen uniformly, then mean + scale * N(0, I).
Matrix generate_gaussian_mixture(const std::vector<MixtureComponent>& components,
                                 std::size_t count, std::uint64_t seed);

// Smooth random images: each channel is a sum of four random sinusoids
// (random amplitude, low spatial frequency, random phase), so contrast
// normalization and whitening act on structured data.
ImageSet generate_synthetic_images(std::size_t count, std::size_t height, std::size_t width,
                                   std::size_t channels, std::uint64_t seed);

// "IKAP" patch container: magic, version u32, rows u64, cols u32, then
// rows x cols little-endian doubles row-major. Round trips are bit-exact.
void write_patches(const std::filesystem::path& path, const Matrix& x);
Matrix read_patches(const std::filesystem::path& path);

// Image sets persist as a directory: header.txt holds count, height, width,
// channels (one integer per line); images.bin holds the pixels as
// little-endian doubles, planar per image (all of channel 0, then channel 1,
// ...), each plane row-major.
void write_image_set(const std::filesystem::path& dir, const ImageSet& images);
ImageSet read_image_set(const std::filesystem::path& dir);

// "IKAW" whitening container: magic, version u32, d u32, epsilon f64, mean
// (d doubles), projection (d x d doubles row-major).
void write_whitening(const std::filesystem::path& path, const WhiteningTransform& transform);
WhiteningTransform read_whitening(const std::filesystem::path& path);

}  // namespace ika
