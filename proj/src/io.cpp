#include "firefront/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace firefront {

namespace {

std::string locate(const std::string& file, std::size_t line, std::size_t column,
                   const std::string& what) {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

struct Field {
  std::string_view text;
  std::size_t column;
};

std::vector<Field> split_csv(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    out.push_back({trim(line.substr(start, end - start)), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_number(std::string_view s, double& v) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

bool parse_int(std::string_view s, long& v) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

const char* kind_name(DetectionKind k) {
  switch (k) {
    case DetectionKind::Fire: return "fire";
    case DetectionKind::NonFireLand: return "nonfire_land";
    case DetectionKind::NonFireWater: return "nonfire_water";
    case DetectionKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& file, std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error(locate(file, line, column, what)),
      file_(file),
      line_(line),
      column_(column) {}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<Detection> read_detections_csv(std::istream& in, const std::string& name) {
  std::vector<Detection> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_csv(view);
    if (!header_seen) {
      static constexpr std::array<std::string_view, 5> kHeader{"lat", "lon", "time_days", "kind",
                                                              "confidence"};
      if (fields.size() != kHeader.size()) {
        throw ParseError(name, lineno, 1, "expected header lat,lon,time_days,kind,confidence");
      }
      for (std::size_t c = 0; c < kHeader.size(); ++c) {
        if (fields[c].text != kHeader[c]) {
          throw ParseError(name, lineno, fields[c].column,
                           "unexpected header column '" + std::string(fields[c].text) + "'");
        }
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ParseError(name, lineno, 1,
                       "expected 5 fields, found " + std::to_string(fields.size()));
    }
    Detection d;
    double lat = 0.0;
    double lon = 0.0;
    if (!parse_number(fields[0].text, lat) || lat < -90.0 || lat > 90.0) {
      throw ParseError(name, lineno, fields[0].column, "invalid latitude");
    }
    if (!parse_number(fields[1].text, lon) || lon < -180.0 || lon > 180.0) {
      throw ParseError(name, lineno, fields[1].column, "invalid longitude");
    }
    d.pos = {lat, lon};
    if (!parse_number(fields[2].text, d.time) || d.time < 0.0) {
      throw ParseError(name, lineno, fields[2].column, "invalid time_days");
    }
    const std::string_view kind = fields[3].text;
    if (kind == "fire") {
      d.kind = DetectionKind::Fire;
    } else if (kind == "nonfire_land") {
      d.kind = DetectionKind::NonFireLand;
    } else if (kind == "nonfire_water") {
      d.kind = DetectionKind::NonFireWater;
    } else {
      throw ParseError(name, lineno, fields[3].column,
                       "unknown kind '" + std::string(kind) + "'");
    }
    long conf = 0;
    if (!parse_int(fields[4].text, conf) || conf < 0 || conf > 100) {
      throw ParseError(name, lineno, fields[4].column, "confidence must be an integer in [0, 100]");
    }
    d.confidence = static_cast<int>(conf);
    out.push_back(d);
  }
  if (!header_seen) throw ParseError(name, lineno + 1, 1, "missing header");
  return out;
}

std::vector<Detection> read_detections_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_detections_csv(in, path);
}

std::vector<GeoPoint> read_polygon_csv(std::istream& in, const std::string& name) {
  std::vector<GeoPoint> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_csv(view);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0].text != "lat" || fields[1].text != "lon") {
        throw ParseError(name, lineno, 1, "expected header lat,lon");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(name, lineno, 1, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    double lat = 0.0;
    double lon = 0.0;
    if (!parse_number(fields[0].text, lat) || lat < -90.0 || lat > 90.0) {
      throw ParseError(name, lineno, fields[0].column, "invalid latitude");
    }
    if (!parse_number(fields[1].text, lon) || lon < -180.0 || lon > 180.0) {
      throw ParseError(name, lineno, fields[1].column, "invalid longitude");
    }
    out.push_back({lat, lon});
  }
  if (!header_seen) throw ParseError(name, lineno + 1, 1, "missing header");
  if (out.size() < 3) throw ParseError(name, lineno, 1, "polygon needs at least 3 vertices");
  return out;
}

std::vector<GeoPoint> read_polygon_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_polygon_csv(in, path);
}

void write_polygon_csv(std::ostream& out, std::span<const GeoPoint> polygon) {
  out << "lat,lon\n";
  for (const GeoPoint& p : polygon) out << format_double(p.lat) << ',' << format_double(p.lon) << '\n';
}

void write_detections_csv(std::ostream& out, const std::vector<Detection>& dets) {
  out << "lat,lon,time_days,kind,confidence\n";
  for (const Detection& d : dets) {
    out << format_double(d.pos.lat) << ',' << format_double(d.pos.lon) << ','
        << format_double(d.time) << ',' << kind_name(d.kind) << ',' << d.confidence << '\n';
  }
}

void write_raster(std::ostream& out, const Grid& grid, const std::vector<double>& values,
                  const std::vector<bool>* mask) {
  if (values.size() != grid.size()) throw std::invalid_argument("raster size mismatch");
  const GeoPoint ll = grid.node_geo(0);
  out << "ncols " << grid.nx() << '\n'
      << "nrows " << grid.ny() << '\n'
      << "xllcorner " << format_double(ll.lon) << '\n'
      << "yllcorner " << format_double(ll.lat) << '\n'
      << "cellsize " << format_double(grid.spacing()) << '\n'
      << "NODATA_value -9999\n";
  for (std::size_t r = 0; r < grid.ny(); ++r) {
    const std::size_t j = grid.ny() - 1 - r;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      if (i) out << ' ';
      out << ((mask && (*mask)[k]) ? std::string("-9999") : format_double(values[k]));
    }
    out << '\n';
  }
}

void write_raster(std::ostream& out, const FireArrivalField& field) {
  const auto v = field.values();
  write_raster(out, field.grid(), std::vector<double>(v.begin(), v.end()));
}

Raster read_raster(std::istream& in, const std::string& name, double t_start, double t_end) {
  static constexpr std::array<std::string_view, 6> kKeys{
      "ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "NODATA_value"};
  std::array<double, 6> header{};
  std::string line;
  std::size_t lineno = 0;
  for (std::size_t h = 0; h < kKeys.size(); ++h) {
    if (!std::getline(in, line)) throw ParseError(name, lineno + 1, 1, "truncated header");
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    std::string value;
    ls >> key >> value;
    if (key != kKeys[h]) {
      throw ParseError(name, lineno, 1, "expected header key '" + std::string(kKeys[h]) + "'");
    }
    if (!parse_number(value, header[h])) {
      throw ParseError(name, lineno, key.size() + 2, "invalid header value");
    }
  }
  const double ncols = header[0];
  const double nrows = header[1];
  if (ncols < 2 || nrows < 2 || ncols != std::floor(ncols) || nrows != std::floor(nrows)) {
    throw ParseError(name, 1, 7, "raster needs integer ncols, nrows >= 2");
  }
  const auto nx = static_cast<std::size_t>(ncols);
  const auto ny = static_cast<std::size_t>(nrows);
  const double nodata = header[5];
  Raster r;
  try {
    r.grid = grid_from_corner({header[3], header[2]}, header[4], nx, ny, t_start, t_end);
  } catch (const std::invalid_argument& e) {
    throw ParseError(name, 3, 1, e.what());
  }
  r.values.assign(nx * ny, 0.0);
  for (std::size_t row = 0; row < ny; ++row) {
    if (!std::getline(in, line)) throw ParseError(name, lineno + 1, 1, "missing raster row");
    ++lineno;
    const std::size_t j = ny - 1 - row;
    std::size_t pos = 0;
    std::size_t count = 0;
    const std::string_view view(line);
    while (true) {
      while (pos < view.size() && (view[pos] == ' ' || view[pos] == '\t' || view[pos] == '\r')) {
        ++pos;
      }
      if (pos >= view.size()) break;
      std::size_t end = pos;
      while (end < view.size() && view[end] != ' ' && view[end] != '\t' && view[end] != '\r') {
        ++end;
      }
      double v = 0.0;
      if (!parse_number(view.substr(pos, end - pos), v)) {
        throw ParseError(name, lineno, pos + 1, "invalid raster value");
      }
      if (count >= nx) throw ParseError(name, lineno, pos + 1, "too many values in row");
      r.values[r.grid.index(count, j)] = v == nodata ? kNoData : v;
      ++count;
      pos = end;
    }
    if (count != nx) {
      throw ParseError(name, lineno, view.size() + 1,
                       "expected " + std::to_string(nx) + " values, found " + std::to_string(count));
    }
  }
  return r;
}

Raster read_raster(const std::string& path, double t_start, double t_end) {
  std::ifstream in = open_input(path);
  return read_raster(in, path, t_start, t_end);
}

FireArrivalField read_arrival_field(const std::string& path, double t_start, double t_end) {
  Raster r = read_raster(path, t_start, t_end);
  const double tol = 1e-9 * std::max(1.0, std::abs(t_end));
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    double& v = r.values[k];
    if (v == kNoData) {
      v = t_end;
    } else if (v < t_start - tol || v > t_end + tol) {
      const std::size_t row = r.grid.ny() - 1 - r.grid.row(k);
      throw ParseError(path, 7 + row, 0,
                       "arrival time " + format_double(v) + " outside the domain time window");
    }
  }
  return FireArrivalField::clamped(r.grid, std::move(r.values));
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace firefront
