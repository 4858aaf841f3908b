#pragma once

#include <iosfwd>
#include <string>

#include "fdsketch/sketch.hpp"

namespace fdsketch {

// FDC1 snapshot: magic "FDC1", then d, ell, steps as unsigned 64-bit
// little-endian, then d*(d+1)/2 little-endian IEEE-754 doubles holding the
// packed upper triangle of the current sketch (row-major), then
// shrinkage_total as one more little-endian double. Round-trips bit-exactly.

void save_sketch(const FdSketch& sketch, std::ostream& out);
FdSketch load_sketch(std::istream& in);

void save_sketch_file(const FdSketch& sketch, const std::string& path);
FdSketch load_sketch_file(const std::string& path);

}  // namespace fdsketch
