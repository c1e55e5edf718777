#pragma once

#include <string>
#include <vector>

#include "minorlab/percolation.hpp"

namespace minorlab {

// Lattice round-trip as CSV: `m,n,policy` header line, then m rows of n
// comma-separated weights.
std::string lattice_to_csv(const LatticeWeights& lat);
LatticeWeights lattice_from_csv(const std::string& text);

// Shape vectors as a JSON array object.
std::string shape_to_json(const ShapeVector& shape);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace minorlab
