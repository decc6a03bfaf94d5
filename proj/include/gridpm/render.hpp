#pragma once

#include <sstream>
#include <string>

#include "gridpm/grid_module.hpp"

namespace gridpm {

// Text diagram of a 1D or 2D support: one character per lattice cell, top row
// first, '.' off the support, fiber dimensions as digits ('#' past nine).
template <class F>
std::string render_ascii(const GridModule<F>& m) {
  if (m.dim() > 2) throw std::invalid_argument("ascii render supports dimensions 1 and 2");
  std::ostringstream out;
  if (m.empty()) {
    out << "# empty module\n";
    return out.str();
  }
  Rectangle box = m.bounding_box();
  auto cell = [&](int d) -> char {
    if (d == 0) return '.';
    if (d > 9) return '#';
    return static_cast<char>('0' + d);
  };
  if (m.dim() == 1) {
    out << "# x [" << box.b[0] << ".." << box.d[0] << "]\n";
    for (long long x = box.b[0]; x <= box.d[0]; ++x) out << cell(m.fiber(Point{x}));
    out << "\n";
    return out.str();
  }
  out << "# x [" << box.b[0] << ".." << box.d[0] << "], y [" << box.b[1] << ".." << box.d[1]
      << "], top row first\n";
  for (long long y = box.d[1]; y >= box.b[1]; --y) {
    for (long long x = box.b[0]; x <= box.d[0]; ++x) out << cell(m.fiber(Point{x, y}));
    out << "\n";
  }
  return out.str();
}

// Plain SVG: one 24px square per support vertex labelled with the fiber
// dimension, origin at the minimal support corner, y pointing up.
template <class F>
std::string render_svg(const GridModule<F>& m) {
  if (m.dim() != 2) throw std::invalid_argument("svg render supports dimension 2");
  std::ostringstream out;
  const int unit = 24;
  if (m.empty()) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"24\" height=\"24\"></svg>\n";
    return out.str();
  }
  Rectangle box = m.bounding_box();
  long long w = (box.d[0] - box.b[0] + 1) * unit;
  long long h = (box.d[1] - box.b[1] + 1) * unit;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  for (const auto& [p, d] : m.fibers()) {
    long long cx = (p[0] - box.b[0]) * unit;
    long long cy = (box.d[1] - p[1]) * unit;  // flip: svg y grows downward
    out << "  <rect x=\"" << cx << "\" y=\"" << cy << "\" width=\"" << unit << "\" height=\""
        << unit << "\" fill=\"#dddddd\" stroke=\"#333333\"/>\n";
    out << "  <text x=\"" << cx + unit / 2 << "\" y=\"" << cy + unit / 2 + 4
        << "\" font-size=\"12\" text-anchor=\"middle\">" << d << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gridpm
