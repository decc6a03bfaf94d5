#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gridpm/barcode.hpp"
#include "gridpm/grid_module.hpp"

namespace gridpm {

// Malformed or inconsistent input documents; the CLI maps this to exit 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::ordered_json;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Barcode files: {"dim": n, "bars": [{"b": [...], "d": [...]}, ...]}
// Canonical: bars sorted lexicographically, integers only.

inline json barcode_to_json(const Barcode& bc) {
  json j;
  j["dim"] = bc.dim();
  j["bars"] = json::array();
  for (const auto& bar : bc) {
    json b;
    b["b"] = bar.b.c;
    b["d"] = bar.d.c;
    j["bars"].push_back(std::move(b));
  }
  return j;
}

inline Point point_from_json(const json& j, int expect_dim) {
  if (!j.is_array()) throw ParseError("expected an integer array");
  std::vector<long long> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("coordinates must be integers");
    c.push_back(v.get<long long>());
  }
  if (expect_dim >= 0 && static_cast<int>(c.size()) != expect_dim)
    throw ParseError("coordinate arity mismatch");
  return Point(std::move(c));
}

inline Barcode barcode_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("bars"))
      throw ParseError("barcode document needs dim and bars");
    if (!j["dim"].is_number_integer()) throw ParseError("dim must be an integer");
    int dim = j["dim"].get<int>();
    if (dim < 1) throw ParseError("dim must be >= 1");
    if (!j["bars"].is_array()) throw ParseError("bars must be a list");
    std::vector<Rectangle> bars;
    for (const auto& b : j["bars"]) {
      if (!b.is_object() || !b.contains("b") || !b.contains("d"))
        throw ParseError("bar needs arrays b and d");
      Point lo = point_from_json(b["b"], dim);
      Point hi = point_from_json(b["d"], dim);
      if (!lo.leq(hi)) throw ParseError("bar needs b <= d componentwise");
      bars.emplace_back(std::move(lo), std::move(hi));
    }
    return Barcode(dim, std::move(bars));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid barcode document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Module files:
// {"dim": n, "field": p, "points": [{"coord": [...], "fiber_dim": k}, ...],
//  "arrows": [{"from": [...], "axis": a, "matrix": [...]}, ...]}
// Points lexicographic, arrows by (from, axis), matrices row-major integers.

template <class F>
json module_to_json(const GridModule<F>& m) {
  json j;
  j["dim"] = m.dim();
  j["field"] = m.field().spec().characteristic;
  j["points"] = json::array();
  for (const auto& [p, d] : m.fibers()) {
    json pt;
    pt["coord"] = p.c;
    pt["fiber_dim"] = d;
    j["points"].push_back(std::move(pt));
  }
  j["arrows"] = json::array();
  for (const auto& [key, mat] : m.arrows()) {
    json a;
    a["from"] = key.first.c;
    a["axis"] = key.second;
    std::vector<long long> entries;
    for (int r = 0; r < mat.rows(); ++r)
      for (int c = 0; c < mat.cols(); ++c)
        entries.push_back(m.field().to_canonical_int(mat(r, c)));
    a["matrix"] = entries;
    j["arrows"].push_back(std::move(a));
  }
  return j;
}

inline std::uint32_t module_field_of_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j["field"].is_number_integer())
    throw ParseError("module document needs an integer field characteristic");
  long long ch = j["field"].get<long long>();
  if (ch < 0 || ch >= (1ll << 16)) throw ParseError("field characteristic out of range");
  return static_cast<std::uint32_t>(ch);
}

template <class F>
GridModule<F> module_from_json(F f, const json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("points") || !j.contains("arrows"))
      throw ParseError("module document needs dim, field, points, arrows");
    int dim = j["dim"].get<int>();
    if (dim < 1) throw ParseError("dim must be >= 1");
    GridModule<F> m(f, dim);
    for (const auto& pt : j["points"]) {
      if (!pt.contains("coord") || !pt.contains("fiber_dim"))
        throw ParseError("point needs coord and fiber_dim");
      int d = pt["fiber_dim"].get<int>();
      if (d < 1) throw ParseError("fiber_dim must be >= 1");
      m.set_fiber(point_from_json(pt["coord"], dim), d);
    }
    for (const auto& a : j["arrows"]) {
      if (!a.contains("from") || !a.contains("axis") || !a.contains("matrix"))
        throw ParseError("arrow needs from, axis, matrix");
      Point from = point_from_json(a["from"], dim);
      int axis = a["axis"].get<int>();
      if (axis < 0 || axis >= dim) throw ParseError("arrow axis out of range");
      Point to = from.shifted(axis, 1);
      int rows = m.fiber(to), cols = m.fiber(from);
      if (rows == 0 || cols == 0) throw ParseError("arrow endpoints must be support points");
      const auto& entries = a["matrix"];
      if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
        throw ParseError("arrow matrix entry count mismatch");
      Matrix<F> mat(f, rows, cols);
      int idx = 0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (!entries[idx].is_number_integer()) throw ParseError("matrix entries are integers");
          mat(r, c) = f.from_int(entries[idx].get<long long>());
          ++idx;
        }
      m.set_arrow(from, axis, std::move(mat));
    }
    m.validate();
    return m;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid module document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// File helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Atomic-enough for batch runs: write then rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  write_file(tmp, content);
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

inline json parse_json_file(const std::string& path) {
  std::string bytes = read_file(path);
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + path);
  return j;
}

}  // namespace gridpm
