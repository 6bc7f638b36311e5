#pragma once

#include "cgl/grid.hpp"

#include <string>

namespace cgl::io {

/// Binary field format: little-endian int64 dim, int64 point count per
/// axis, then the u1 array followed by the u2 array as little-endian
/// 64-bit floats (x-fastest ordering).
void write_field(const std::string& path, const Field& f, const Grid& g);

/// Reads a field and checks its shape against the grid.
Field read_field(const std::string& path, const Grid& g);

/// Forcing series format: the field header (dim, counts), then int64
/// sample count, f64 domain end, the sample times, and one field pair
/// (u1 array, u2 array) per sample.
void write_series(const std::string& path, const TimeSeriesField& F, const Grid& g);

TimeSeriesField read_series(const std::string& path, const Grid& g);

}  // namespace cgl::io
