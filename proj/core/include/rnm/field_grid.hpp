#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rnm/hermitian_poly.hpp"

namespace rnm {

/// Inclusive node lattice x0 + i (x1 - x0) / (nx - 1), likewise in y.
struct GridSpec {
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  int nx = 41, ny = 41;

  Complex node(int ix, int iy) const;
};

/// Scalar values on a GridSpec lattice plus string metadata. Values are stored
/// row by row (iy outer, ix inner).
struct FieldGrid {
  GridSpec grid;
  std::string quantity;
  std::vector<double> values;
  std::map<std::string, std::string> metadata;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy * grid.nx + ix)]; }
  double max_value() const;
  /// Node of the largest value.
  Complex argmax() const;
};

/// Header x,y,value then one row per node, full double precision.
void write_grid_csv(std::ostream& os, const FieldGrid& g);
/// Metadata, grid description and values as a JSON document.
void write_grid_json(std::ostream& os, const FieldGrid& g);
FieldGrid read_grid_json(std::istream& is);

}  // namespace rnm
