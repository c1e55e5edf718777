#include "minorlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "minorlab/errors.hpp"

namespace minorlab {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

std::string lattice_to_csv(const LatticeWeights& lat) {
  std::ostringstream out;
  out << "m,n,policy\n" << lat.m << "," << lat.n << "," << lat.policy.name() << "\n";
  for (int i = 0; i < lat.m; ++i) {
    for (int j = 0; j < lat.n; ++j) {
      if (j) out << ",";
      out << format_double(lat.at(i, j));
    }
    out << "\n";
  }
  return out.str();
}

LatticeWeights lattice_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("m,n,policy", 0) != 0) {
    throw ConfigError("lattice_from_csv: missing header");
  }
  if (!std::getline(in, line)) throw ConfigError("lattice_from_csv: missing dimensions");
  LatticeWeights lat;
  {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    lat.m = std::stoi(cell);
    std::getline(row, cell, ',');
    lat.n = std::stoi(cell);
    std::getline(row, cell, ',');
    // policies other than explicit re-attach as explicit on load
    lat.policy.case_id = 0;
  }
  if (lat.m < 1 || lat.n < 1) throw ConfigError("lattice_from_csv: bad dimensions");
  lat.w.reserve(static_cast<size_t>(lat.m) * lat.n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) lat.w.push_back(std::stod(cell));
  }
  if (lat.w.size() != static_cast<size_t>(lat.m) * lat.n) {
    throw ConfigError("lattice_from_csv: cell count does not match dimensions");
  }
  lat.policy.explicit_rates.assign(lat.w.size(), 1.0);
  return lat;
}

std::string shape_to_json(const ShapeVector& shape) {
  std::ostringstream out;
  out << "{\"origin\":[" << shape.origin_m << "," << shape.origin_n << "],\"entries\":[";
  for (size_t i = 0; i < shape.entries.size(); ++i) {
    if (i) out << ",";
    out << format_double(shape.entries[i]);
  }
  out << "]}";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace minorlab
