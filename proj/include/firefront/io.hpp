#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/grid.hpp"

namespace firefront {

/// Malformed input file. The message names the file, line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column,
             const std::string& what);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

inline constexpr double kNoData = -9999.0;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::vector<Detection> read_detections_csv(std::istream& in, const std::string& name);
std::vector<Detection> read_detections_csv(const std::string& path);
void write_detections_csv(std::ostream& out, const std::vector<Detection>& dets);

/// Polygon vertices with header `lat,lon`, one vertex per row.
std::vector<GeoPoint> read_polygon_csv(std::istream& in, const std::string& name);
std::vector<GeoPoint> read_polygon_csv(const std::string& path);
void write_polygon_csv(std::ostream& out, std::span<const GeoPoint> polygon);

/// A raster as stored on disk; `values` holds kNoData where masked.
struct Raster {
  Grid grid;
  std::vector<double> values;
};

/// ESRI ASCII grid. The corner fields carry the lon/lat of the south-west node
/// and cellsize is the node spacing in meters; rows are written north first.
void write_raster(std::ostream& out, const Grid& grid, const std::vector<double>& values,
                  const std::vector<bool>* mask = nullptr);
void write_raster(std::ostream& out, const FireArrivalField& field);
Raster read_raster(std::istream& in, const std::string& name, double t_start, double t_end);
Raster read_raster(const std::string& path, double t_start, double t_end);
/// Reads an arrival field; NODATA cells mean "not burned" and become t_end.
FireArrivalField read_arrival_field(const std::string& path, double t_start, double t_end);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace firefront
