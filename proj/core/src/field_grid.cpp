#include "rnm/field_grid.hpp"

#include <algorithm>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "rnm/errors.hpp"

namespace rnm {

Complex GridSpec::node(int ix, int iy) const {
  const double x = nx > 1 ? x0 + ix * (x1 - x0) / (nx - 1) : x0;
  const double y = ny > 1 ? y0 + iy * (y1 - y0) / (ny - 1) : y0;
  return {x, y};
}

double FieldGrid::max_value() const { return *std::max_element(values.begin(), values.end()); }

Complex FieldGrid::argmax() const {
  const auto it = std::max_element(values.begin(), values.end());
  const int idx = static_cast<int>(it - values.begin());
  return grid.node(idx % grid.nx, idx / grid.nx);
}

void write_grid_csv(std::ostream& os, const FieldGrid& g) {
  os << "x,y,value\n";
  os.precision(17);
  for (int iy = 0; iy < g.grid.ny; ++iy) {
    for (int ix = 0; ix < g.grid.nx; ++ix) {
      const Complex z = g.grid.node(ix, iy);
      os << z.real() << ',' << z.imag() << ',' << g.at(ix, iy) << '\n';
    }
  }
}

void write_grid_json(std::ostream& os, const FieldGrid& g) {
  nlohmann::json j;
  j["quantity"] = g.quantity;
  j["grid"] = {{"x0", g.grid.x0}, {"x1", g.grid.x1}, {"y0", g.grid.y0},
               {"y1", g.grid.y1}, {"nx", g.grid.nx}, {"ny", g.grid.ny}};
  j["metadata"] = g.metadata;
  j["values"] = g.values;
  os << j.dump(2) << '\n';
}

FieldGrid read_grid_json(std::istream& is) {
  try {
    const nlohmann::json j = nlohmann::json::parse(is);
    FieldGrid g;
    g.quantity = j.at("quantity").get<std::string>();
    const auto& gr = j.at("grid");
    g.grid.x0 = gr.at("x0");
    g.grid.x1 = gr.at("x1");
    g.grid.y0 = gr.at("y0");
    g.grid.y1 = gr.at("y1");
    g.grid.nx = gr.at("nx");
    g.grid.ny = gr.at("ny");
    g.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    g.values = j.at("values").get<std::vector<double>>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed grid JSON: ") + e.what());
  }
}

}  // namespace rnm
