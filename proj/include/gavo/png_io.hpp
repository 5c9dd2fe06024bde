#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gavo {

/// Interleaved 8-bit RGB pixels, row-major.
struct Rgb8Image
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
};

/// 16-bit single-channel pixels, row-major.
struct Gray16Image
{
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;
};

// Readers throw MissingFile or UnsupportedPixelFormat.
Rgb8Image read_png_rgb8(const std::string& path);
Gray16Image read_png_gray16(const std::string& path);

void write_png_rgb8(const std::string& path, const Rgb8Image& image);
void write_png_gray16(const std::string& path, const Gray16Image& image);

}  // namespace gavo
