#pragma once

#include <filesystem>
#include <iosfwd>

#include "glide/grid.hpp"

namespace glide {

/// ESRI ASCII grid raster. Node positions are the cell centers; NODATA
/// cells become +inf (impassable).
struct AsciiGrid {
  GridSpec grid;
  ElevationField elevation;
  double nodata = -9999.0;
};

AsciiGrid parse_ascii_grid(std::istream& in);
AsciiGrid import_ascii_grid(const std::filesystem::path& path);

/// Writes the header with xllcorner/yllcorner and north-up rows. Values are
/// printed in shortest round-trip form; +inf is written as `nodata`.
void write_ascii_grid(std::ostream& out, const GridSpec& grid, const ElevationField& elevation, double nodata = -9999.0);
void export_ascii_grid(const std::filesystem::path& path, const GridSpec& grid, const ElevationField& elevation,
                       double nodata = -9999.0);

}  // namespace glide
