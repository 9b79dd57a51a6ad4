#pragma once

#include <string>

#include "iris/image.hpp"

namespace iris {

/// Binary PGM (P5, maxval 255). Luminance maps to [0,1] as value/255;
/// write(read(f)) reproduces the pixel bytes exactly.
GrayImage read_pgm(const std::string& path);
void write_pgm(const GrayImage& img, const std::string& path);

}  // namespace iris
