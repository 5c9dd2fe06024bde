#pragma once

#include <vector>

#include "gavo/image.hpp"

namespace gavo {

/// Coarse-to-fine stack of a frame. levels[0] is full resolution; each
/// further level halves both dimensions (floor), averaging 2x2 blocks.
struct FramePyramid
{
  std::vector<RgbdFrame> levels;

  std::size_t size() const { return levels.size(); }
  const RgbdFrame& operator[](std::size_t level) const { return levels[level]; }
};

/// 2x2 block mean over the top-left floor(rows/2) x floor(cols/2) blocks.
Image downsample_intensity(const Image& image);

/// 2x2 block mean over the non-zero depths only; 0 where a block has none.
Image downsample_depth(const Image& depth);

/// Throws TooManyLevels if some level would have a zero dimension.
FramePyramid build_pyramid(const RgbdFrame& frame, int num_levels);

}  // namespace gavo
