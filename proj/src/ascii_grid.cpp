#include "glide/ascii_grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "glide/errors.hpp"

namespace glide {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> parse_number(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

AsciiGrid parse_ascii_grid(std::istream& in) {
  static const char* const keys[] = {"ncols", "nrows", "xllcorner", "yllcorner", "xllcenter",
                                     "yllcenter", "cellsize", "nodata_value"};
  std::map<std::string, double> header;
  std::string token;
  std::optional<std::string> first_value;
  while (in >> token) {
    const std::string key = lower(token);
    if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
      first_value = token;
      break;
    }
    std::string value;
    if (!(in >> value)) throw Error(ErrorCode::io, "ascii grid: header field " + key + " has no value", key);
    const auto v = parse_number(value);
    if (!v) throw Error(ErrorCode::io, "ascii grid: header field " + key + " is not numeric", key);
    header[key] = *v;
  }
  for (const char* required : {"ncols", "nrows", "cellsize"})
    if (!header.count(required)) throw Error(ErrorCode::io, std::string("ascii grid: missing header field ") + required, required);
  const bool corner = header.count("xllcorner") && header.count("yllcorner");
  const bool center = header.count("xllcenter") && header.count("yllcenter");
  if (!corner && !center) throw Error(ErrorCode::io, "ascii grid: missing header field xllcorner/yllcorner", "xllcorner");

  AsciiGrid out;
  out.nodata = header.count("nodata_value") ? header["nodata_value"] : -9999.0;
  out.grid.n_cols = static_cast<int>(header["ncols"]);
  out.grid.n_rows = static_cast<int>(header["nrows"]);
  out.grid.spacing = header["cellsize"];
  if (out.grid.n_cols <= 0 || out.grid.n_rows <= 0 || !(out.grid.spacing > 0))
    throw Error(ErrorCode::io, "ascii grid: non-positive dimensions");
  const double half = corner ? 0.5 * out.grid.spacing : 0.0;
  out.grid.origin = corner ? Vec2{header["xllcorner"] + half, header["yllcorner"] + half}
                           : Vec2{header["xllcenter"], header["yllcenter"]};

  const std::size_t n = out.grid.node_count();
  std::vector<double> file_order;
  file_order.reserve(n);
  auto push = [&](const std::string& tok) {
    const auto v = parse_number(tok);
    if (!v) throw Error(ErrorCode::io, "ascii grid: non-numeric cell '" + tok + "'");
    file_order.push_back(*v);
  };
  if (first_value) push(*first_value);
  while (in >> token) push(token);
  if (file_order.size() != n)
    throw Error(ErrorCode::io, "ascii grid: expected " + std::to_string(n) + " values, found " +
                                   std::to_string(file_order.size()));

  // First file row is the northernmost; internal row 0 is the southernmost.
  out.elevation.values.resize(n);
  const int nc = out.grid.n_cols;
  const int nr = out.grid.n_rows;
  for (int r = 0; r < nr; ++r) {
    const int j = nr - 1 - r;
    for (int i = 0; i < nc; ++i) {
      const double v = file_order[static_cast<std::size_t>(r) * nc + i];
      out.elevation.values[out.grid.index(i, j)] = v == out.nodata ? kInfinity : v;
    }
  }
  return out;
}

AsciiGrid import_ascii_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open raster " + path.string(), "elevation.raster");
  return parse_ascii_grid(in);
}

void write_ascii_grid(std::ostream& out, const GridSpec& grid, const ElevationField& elevation, double nodata) {
  const double half = 0.5 * grid.spacing;
  out << "ncols " << grid.n_cols << "\n"
      << "nrows " << grid.n_rows << "\n"
      << "xllcorner " << shortest(grid.origin.x - half) << "\n"
      << "yllcorner " << shortest(grid.origin.y - half) << "\n"
      << "cellsize " << shortest(grid.spacing) << "\n"
      << "NODATA_value " << shortest(nodata) << "\n";
  for (int j = grid.n_rows - 1; j >= 0; --j) {
    for (int i = 0; i < grid.n_cols; ++i) {
      const double v = elevation.values[grid.index(i, j)];
      if (i) out << ' ';
      out << shortest(std::isinf(v) ? nodata : v);
    }
    out << '\n';
  }
}

void export_ascii_grid(const std::filesystem::path& path, const GridSpec& grid, const ElevationField& elevation,
                       double nodata) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write raster " + path.string());
  write_ascii_grid(out, grid, elevation, nodata);
}

}  // namespace glide
