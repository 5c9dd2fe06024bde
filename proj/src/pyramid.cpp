#include "gavo/pyramid.hpp"

#include <string>

#include "gavo/errors.hpp"

namespace gavo {

Image downsample_intensity(const Image& image)
{
  const Eigen::Index rows = image.rows() / 2;
  const Eigen::Index cols = image.cols() / 2;
  Image out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      out(r, c) = 0.25 * (image(2 * r, 2 * c) + image(2 * r, 2 * c + 1) +
                          image(2 * r + 1, 2 * c) + image(2 * r + 1, 2 * c + 1));
  return out;
}

Image downsample_depth(const Image& depth)
{
  const Eigen::Index rows = depth.rows() / 2;
  const Eigen::Index cols = depth.cols() / 2;
  Image out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double sum = 0;
      int count = 0;
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 2; ++dc) {
          const double d = depth(2 * r + dr, 2 * c + dc);
          if (d > 0) {
            sum += d;
            ++count;
          }
        }
      }
      out(r, c) = count > 0 ? sum / count : 0.0;
    }
  }
  return out;
}

FramePyramid build_pyramid(const RgbdFrame& frame, int num_levels)
{
  if (num_levels < 1)
    throw TooManyLevels("a pyramid needs at least one level");
  if (frame.depth.rows() != frame.intensity.rows() ||
      frame.depth.cols() != frame.intensity.cols())
    throw DimensionMismatch("intensity and depth differ in size");

  FramePyramid pyramid;
  pyramid.levels.reserve(static_cast<std::size_t>(num_levels));
  pyramid.levels.push_back(frame);
  for (int level = 1; level < num_levels; ++level) {
    const RgbdFrame& prev = pyramid.levels.back();
    if (prev.width() < 2 || prev.height() < 2)
      throw TooManyLevels("level " + std::to_string(level) + " of a " +
                          std::to_string(frame.width()) + "x" +
                          std::to_string(frame.height()) + " frame would be empty");
    RgbdFrame next;
    next.intensity = downsample_intensity(prev.intensity);
    next.depth = downsample_depth(prev.depth);
    next.intrinsics = prev.intrinsics.halved();
    pyramid.levels.push_back(std::move(next));
  }
  return pyramid;
}

}  // namespace gavo
