#pragma once

// JSON documents: {"version": "1", "kind": ..., "name": ..., "payload": ...}.
// Scalars are written as strings "p/q"; integers are also accepted on input.

#include "fingpd/linking.hpp"
#include "lie2/lie_bibundle.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

namespace lie2::io {

inline constexpr const char* format_version = "1";

/// Syntax error in the JSON text, with 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed JSON that does not match the schema of its kind.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what) {}
};

struct Document {
  std::string version = format_version;
  std::string kind;
  std::string name;
  Json payload = Json::object();
};

inline const std::vector<std::string>& input_kinds() {
  static const std::vector<std::string> kinds{"lie_algebra", "crossed_module", "lie2_algebra", "lie2_functor",
                                              "lie_bibundle", "fin_groupoid",  "fin_functor",  "fin_bibundle",
                                              "cocycle"};
  return kinds;
}

inline constexpr const char* cell_list_kind = "cell_list";

// ---------------------------------------------------------------------------
// Text <-> Document

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the 1-based index of the offending byte.
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto k = what.find("]: "); k != std::string::npos) what = what.substr(k + 3);
    throw ParseError(line, col, what);
  }
  if (!j.is_object()) throw SchemaError("document", "expected a JSON object");
  Document d;
  for (const char* key : {"version", "kind", "name"}) {
    if (!j.contains(key) || !j[key].is_string()) throw SchemaError(key, "missing or not a string");
  }
  if (!j.contains("payload") || !j["payload"].is_object()) throw SchemaError("payload", "missing or not an object");
  d.version = j["version"].get<std::string>();
  if (d.version != format_version) throw SchemaError("version", "unsupported format version '" + d.version + "'");
  d.kind = j["kind"].get<std::string>();
  d.name = j["name"].get<std::string>();
  d.payload = j["payload"];
  return d;
}

inline std::string emit_document(const Document& d) {
  Json j = Json::object();
  j["version"] = d.version;
  j["kind"] = d.kind;
  j["name"] = d.name;
  j["payload"] = d.payload;
  return j.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Document load_document(const std::string& path) { return parse_document(read_file(path)); }

// ---------------------------------------------------------------------------
// Primitive encoders/decoders

namespace detail {

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  if (!j.contains(key)) throw SchemaError(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const Json& array_field(const Json& j, const std::string& path, const char* key) {
  const Json& v = field(j, path, key);
  if (!v.is_array()) throw SchemaError(path + "." + key, "expected an array");
  return v;
}

inline std::string string_value(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline std::size_t count_value(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace detail

inline Json encode_scalar(const Scalar& x) { return format_scalar(x); }

inline Scalar decode_scalar(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Scalar(std::to_string(j.get<unsigned long long>()));
  if (!j.is_string()) throw SchemaError(path, "expected a rational written as a string \"p/q\" or an integer");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

inline Json encode_vector(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(encode_scalar(x));
  return a;
}

inline Vector decode_vector(const Json& j, const std::string& path, std::size_t n) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rationals");
  if (j.size() != n) throw SchemaError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(decode_scalar(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Json encode_matrix(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(encode_vector(m.row(r)));
  return a;
}

inline Matrix decode_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  if (j.size() != rows) throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::vector<Vector> rs;
  for (std::size_t r = 0; r < rows; ++r) rs.push_back(decode_vector(j[r], path + "[" + std::to_string(r) + "]", cols));
  return Matrix::from_rows(rs, cols);
}

inline std::vector<std::string> decode_names(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string n = detail::string_value(j[i], path + "[" + std::to_string(i) + "]");
    if (n.empty()) throw SchemaError(path, "empty name");
    if (std::find(names.begin(), names.end(), n) != names.end()) throw SchemaError(path, "duplicate name '" + n + "'");
    names.push_back(std::move(n));
  }
  return names;
}

// ---------------------------------------------------------------------------
// Lie side

/// Sparse element: {"name": "p/q", ...} in basis order.
inline Json encode_element(const LieAlgebra& l, const Vector& v) {
  Json o = Json::object();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!is_zero(v[k])) o[l.name(k)] = encode_scalar(v[k]);
  return o;
}

inline Vector decode_element(const std::vector<std::string>& names, const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object mapping basis names to rationals");
  Vector v = zero_vector(names.size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto pos = std::find(names.begin(), names.end(), it.key());
    if (pos == names.end()) throw SchemaError(path, "unknown basis element '" + it.key() + "'");
    v[pos - names.begin()] = decode_scalar(it.value(), path + "." + it.key());
  }
  return v;
}

/// Brackets are listed for i < j; the pair (j, i) appears only where
/// antisymmetry fails, and (i, i) only where it is nonzero.
inline Json encode_lie_algebra(const LieAlgebra& l) {
  Json brackets = Json::array();
  auto entry = [&](std::size_t i, std::size_t j) {
    Json e = Json::object();
    e["pair"] = Json::array({l.name(i), l.name(j)});
    e["value"] = encode_element(l, l.bracket_basis(i, j));
    brackets.push_back(e);
  };
  for (std::size_t i = 0; i < l.dim(); ++i) {
    if (!is_zero(l.bracket_basis(i, i))) entry(i, i);
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Vector a = l.bracket_basis(i, j), b = l.bracket_basis(j, i);
      if (is_zero(a) && is_zero(b)) continue;
      entry(i, j);
      if (b != -a) entry(j, i);
    }
  }
  Json o = Json::object();
  o["basis"] = l.names();
  o["brackets"] = brackets;
  return o;
}

inline LieAlgebra decode_lie_algebra(const Json& j, const std::string& path) {
  std::vector<std::string> names = decode_names(detail::field(j, path, "basis"), path + ".basis");
  const Json& br = detail::array_field(j, path, "brackets");
  std::vector<std::tuple<std::size_t, std::size_t, Vector>> list;
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < br.size(); ++k) {
    std::string p = path + ".brackets[" + std::to_string(k) + "]";
    const Json& pair = detail::array_field(br[k], p, "pair");
    if (pair.size() != 2) throw SchemaError(p + ".pair", "expected two basis names");
    std::size_t ij[2];
    for (int s = 0; s < 2; ++s) {
      std::string n = detail::string_value(pair[s], p + ".pair");
      auto pos = std::find(names.begin(), names.end(), n);
      if (pos == names.end()) throw SchemaError(p + ".pair", "unknown basis element '" + n + "'");
      ij[s] = pos - names.begin();
    }
    if (std::find(seen.begin(), seen.end(), std::pair{ij[0], ij[1]}) != seen.end())
      throw SchemaError(p, "bracket given twice");
    seen.emplace_back(ij[0], ij[1]);
    list.emplace_back(ij[0], ij[1], decode_element(names, detail::field(br[k], p, "value"), p + ".value"));
  }
  return LieAlgebra::from_brackets(std::move(names), list);
}

inline Json encode_crossed_module(const CrossedModule& cm) {
  Json o = Json::object();
  o["m"] = encode_lie_algebra(cm.m);
  o["n"] = encode_lie_algebra(cm.n);
  o["boundary"] = encode_matrix(cm.del.matrix);
  Json action = Json::object();
  for (std::size_t j = 0; j < cm.n.dim(); ++j) action[cm.n.name(j)] = encode_matrix(cm.action[j]);
  o["action"] = action;
  return o;
}

inline CrossedModule decode_crossed_module(const Json& j, const std::string& path) {
  LieAlgebra m = decode_lie_algebra(detail::field(j, path, "m"), path + ".m");
  LieAlgebra n = decode_lie_algebra(detail::field(j, path, "n"), path + ".n");
  Matrix del = decode_matrix(detail::field(j, path, "boundary"), path + ".boundary", n.dim(), m.dim());
  const Json& act = detail::field(j, path, "action");
  if (!act.is_object()) throw SchemaError(path + ".action", "expected an object keyed by basis names of n");
  std::vector<Matrix> action;
  for (std::size_t k = 0; k < n.dim(); ++k) {
    if (!act.contains(n.name(k))) throw SchemaError(path + ".action", "missing D(" + n.name(k) + ")");
    action.push_back(decode_matrix(act.at(n.name(k)), path + ".action." + n.name(k), m.dim(), m.dim()));
  }
  if (act.size() != n.dim()) throw SchemaError(path + ".action", "entries for unknown basis elements");
  return CrossedModule(std::move(m), std::move(n), std::move(del), std::move(action));
}

inline Json encode_lie2(const Lie2Algebra& a) {
  Json o = Json::object();
  o["V1"] = encode_lie_algebra(a.v1);
  o["V0"] = encode_lie_algebra(a.v0);
  o["source"] = encode_matrix(a.s.matrix);
  o["target"] = encode_matrix(a.t.matrix);
  o["unit"] = encode_matrix(a.unit.matrix);
  o["composition"] = encode_matrix(a.composition_extension());
  return o;
}

inline Lie2Algebra decode_lie2(const Json& j, const std::string& path) {
  LieAlgebra v1 = decode_lie_algebra(detail::field(j, path, "V1"), path + ".V1");
  LieAlgebra v0 = decode_lie_algebra(detail::field(j, path, "V0"), path + ".V0");
  const std::size_t n = v1.dim(), o = v0.dim();
  Matrix s = decode_matrix(detail::field(j, path, "source"), path + ".source", o, n);
  Matrix t = decode_matrix(detail::field(j, path, "target"), path + ".target", o, n);
  Matrix u = decode_matrix(detail::field(j, path, "unit"), path + ".unit", n, o);
  Matrix c = decode_matrix(detail::field(j, path, "composition"), path + ".composition", n, 2 * n);
  return Lie2Algebra::from_extension(std::move(v1), std::move(v0), std::move(s), std::move(t), std::move(u), c);
}

inline Json encode_lie2_functor(const Lie2Functor& f) {
  Json o = Json::object();
  o["source"] = encode_lie2(f.source);
  o["target"] = encode_lie2(f.target);
  o["F1"] = encode_matrix(f.f1.matrix);
  o["F0"] = encode_matrix(f.f0.matrix);
  return o;
}

inline Lie2Functor decode_lie2_functor(const Json& j, const std::string& path) {
  Lie2Algebra a = decode_lie2(detail::field(j, path, "source"), path + ".source");
  Lie2Algebra b = decode_lie2(detail::field(j, path, "target"), path + ".target");
  Matrix f1 = decode_matrix(detail::field(j, path, "F1"), path + ".F1", b.v1.dim(), a.v1.dim());
  Matrix f0 = decode_matrix(detail::field(j, path, "F0"), path + ".F0", b.v0.dim(), a.v0.dim());
  return Lie2Functor(std::move(a), std::move(b), std::move(f1), std::move(f0));
}

inline Json encode_lie_bibundle(const LieBibundle& b) {
  Json o = Json::object();
  o["p"] = encode_lie_algebra(b.p);
  o["g"] = encode_lie2(b.g);
  o["h"] = encode_lie2(b.h);
  o["left_anchor"] = encode_matrix(b.a_left.matrix);
  o["right_anchor"] = encode_matrix(b.a_right.matrix);
  o["left_action"] = encode_matrix(b.left_extension());
  o["right_action"] = encode_matrix(b.right_extension());
  return o;
}

inline LieBibundle decode_lie_bibundle(const Json& j, const std::string& path) {
  LieAlgebra p = decode_lie_algebra(detail::field(j, path, "p"), path + ".p");
  Lie2Algebra g = decode_lie2(detail::field(j, path, "g"), path + ".g");
  Lie2Algebra h = decode_lie2(detail::field(j, path, "h"), path + ".h");
  const std::size_t d = p.dim();
  Matrix al = decode_matrix(detail::field(j, path, "left_anchor"), path + ".left_anchor", g.v0.dim(), d);
  Matrix ar = decode_matrix(detail::field(j, path, "right_anchor"), path + ".right_anchor", h.v0.dim(), d);
  Matrix la = decode_matrix(detail::field(j, path, "left_action"), path + ".left_action", d, g.v1.dim() + d);
  Matrix ra = decode_matrix(detail::field(j, path, "right_action"), path + ".right_action", d, d + h.v1.dim());
  std::size_t g1 = g.v1.dim(), h1 = h.v1.dim();
  (void)g1;
  (void)h1;
  return LieBibundle::from_extension(std::move(p), std::move(g), std::move(h), std::move(al), std::move(ar), la, ra);
}

inline Json encode_cocycle(const CocycleData& c) {
  Json o = Json::object();
  o["u_dim"] = c.complex.u_dim;
  o["w_dim"] = c.complex.w_dim;
  o["boundary"] = encode_matrix(c.complex.del);
  Json objs = Json::array();
  for (const auto& v : c.objects) objs.push_back(encode_vector(v));
  o["objects"] = objs;
  Json mors = Json::array();
  for (const auto& row : c.morphisms) {
    Json r = Json::array();
    for (const auto& u : row) r.push_back(encode_vector(u));
    mors.push_back(r);
  }
  o["morphisms"] = mors;
  Json w = Json::array();
  for (const auto& x : c.weights) w.push_back(encode_scalar(x));
  o["weights"] = w;
  return o;
}

inline CocycleData decode_cocycle(const Json& j, const std::string& path) {
  std::size_t u = detail::count_value(detail::field(j, path, "u_dim"), path + ".u_dim");
  std::size_t w = detail::count_value(detail::field(j, path, "w_dim"), path + ".w_dim");
  CocycleData c;
  c.complex = TwoTermComplex(u, w, decode_matrix(detail::field(j, path, "boundary"), path + ".boundary", w, u));
  const Json& objs = detail::array_field(j, path, "objects");
  const std::size_t s = objs.size();
  for (std::size_t i = 0; i < s; ++i) c.objects.push_back(decode_vector(objs[i], path + ".objects[" + std::to_string(i) + "]", w));
  const Json& mors = detail::array_field(j, path, "morphisms");
  if (mors.size() != s) throw SchemaError(path + ".morphisms", "expected " + std::to_string(s) + " rows");
  for (std::size_t i = 0; i < s; ++i) {
    std::string p = path + ".morphisms[" + std::to_string(i) + "]";
    if (!mors[i].is_array() || mors[i].size() != s) throw SchemaError(p, "expected " + std::to_string(s) + " entries");
    std::vector<Vector> row;
    for (std::size_t k = 0; k < s; ++k) row.push_back(decode_vector(mors[i][k], p + "[" + std::to_string(k) + "]", u));
    c.morphisms.push_back(std::move(row));
  }
  const Json& ws = detail::array_field(j, path, "weights");
  if (ws.size() != s) throw SchemaError(path + ".weights", "expected " + std::to_string(s) + " weights");
  for (std::size_t i = 0; i < s; ++i) c.weights.push_back(decode_scalar(ws[i], path + ".weights[" + std::to_string(i) + "]"));
  return c;
}

inline Json encode_cell(const Cell& c) {
  Json o = Json::object();
  o["u"] = encode_vector(c.u);
  o["v"] = encode_vector(c.v);
  return o;
}

/// Output of resolve-cocycle: the cocycle, the cells z_i and the table of
/// verified identities w_ij = z_i z_j^-1.
inline Json encode_cell_list(const CocycleData& c, const std::vector<Cell>& z) {
  Json o = Json::object();
  o["cocycle"] = encode_cocycle(c);
  Json cells = Json::array();
  for (const auto& cell : z) cells.push_back(encode_cell(cell));
  o["cells"] = cells;
  Json table = Json::array();
  for (std::size_t i = 0; i < z.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < z.size(); ++j) {
      bool ok = false;
      try {
        ok = compose_cells(c.complex, z[i], invert_cell(c.complex, z[j])) == c.arrow(i, j);
      } catch (const std::invalid_argument&) {
      }
      row.push_back(ok);
    }
    table.push_back(row);
  }
  o["identities"] = table;
  return o;
}

inline std::pair<CocycleData, std::vector<Cell>> decode_cell_list(const Json& j, const std::string& path) {
  CocycleData c = decode_cocycle(detail::field(j, path, "cocycle"), path + ".cocycle");
  const Json& cells = detail::array_field(j, path, "cells");
  std::vector<Cell> z;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = path + ".cells[" + std::to_string(i) + "]";
    z.push_back({decode_vector(detail::field(cells[i], p, "u"), p + ".u", c.complex.u_dim),
                 decode_vector(detail::field(cells[i], p, "v"), p + ".v", c.complex.w_dim)});
  }
  return {std::move(c), std::move(z)};
}

// ---------------------------------------------------------------------------
// Finite side

inline Json encode_groupoid(const fingpd::FinGroupoid& g) {
  Json o = Json::object();
  o["objects"] = g.objects().names();
  Json arrows = Json::array();
  for (fingpd::Index a = 0; a < g.arrow_count(); ++a) {
    Json e = Json::object();
    e["name"] = g.arrows()[a];
    e["source"] = g.objects()[g.s(a)];
    e["target"] = g.objects()[g.t(a)];
    e["inverse"] = g.arrows()[g.inv(a)];
    arrows.push_back(e);
  }
  o["arrows"] = arrows;
  Json units = Json::object();
  for (fingpd::Index x = 0; x < g.object_count(); ++x) units[g.objects()[x]] = g.arrows()[g.unit(x)];
  o["units"] = units;
  Json comp = Json::array();
  for (const auto& e : g.comp_entries())
    comp.push_back(Json::array({g.arrows()[e.second], g.arrows()[e.first], g.arrows()[e.result]}));
  o["composition"] = comp;
  return o;
}

namespace detail {

inline fingpd::Index lookup(const fingpd::Labels& labels, const Json& j, const std::string& path, const char* what) {
  std::string n = string_value(j, path);
  auto i = labels.find(n);
  if (!i) throw SchemaError(path, std::string("unknown ") + what + " '" + n + "'");
  return *i;
}

}  // namespace detail

inline fingpd::FinGroupoid decode_groupoid(const Json& j, const std::string& path) {
  using fingpd::Index;
  std::vector<std::string> onames = decode_names(detail::field(j, path, "objects"), path + ".objects");
  fingpd::Labels objs(onames);
  const Json& arr = detail::array_field(j, path, "arrows");
  std::vector<std::string> anames;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string p = path + ".arrows[" + std::to_string(k) + "]";
    std::string n = detail::string_value(detail::field(arr[k], p, "name"), p + ".name");
    if (std::find(anames.begin(), anames.end(), n) != anames.end()) throw SchemaError(p, "duplicate arrow '" + n + "'");
    anames.push_back(n);
  }
  fingpd::Labels arrows(anames);
  std::vector<Index> src, tgt, inv, unit;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string p = path + ".arrows[" + std::to_string(k) + "]";
    src.push_back(detail::lookup(objs, detail::field(arr[k], p, "source"), p + ".source", "object"));
    tgt.push_back(detail::lookup(objs, detail::field(arr[k], p, "target"), p + ".target", "object"));
    inv.push_back(detail::lookup(arrows, detail::field(arr[k], p, "inverse"), p + ".inverse", "arrow"));
  }
  const Json& units = detail::field(j, path, "units");
  if (!units.is_object()) throw SchemaError(path + ".units", "expected an object keyed by objects");
  for (const auto& o : onames) {
    if (!units.contains(o)) throw SchemaError(path + ".units", "missing unit of '" + o + "'");
    unit.push_back(detail::lookup(arrows, units.at(o), path + ".units." + o, "arrow"));
  }
  if (units.size() != onames.size()) throw SchemaError(path + ".units", "units for unknown objects");
  const Json& comp = detail::array_field(j, path, "composition");
  std::vector<fingpd::CompEntry> entries;
  for (std::size_t k = 0; k < comp.size(); ++k) {
    std::string p = path + ".composition[" + std::to_string(k) + "]";
    if (!comp[k].is_array() || comp[k].size() != 3) throw SchemaError(p, "expected [second, first, result]");
    entries.push_back({detail::lookup(arrows, comp[k][0], p + "[0]", "arrow"),
                       detail::lookup(arrows, comp[k][1], p + "[1]", "arrow"),
                       detail::lookup(arrows, comp[k][2], p + "[2]", "arrow")});
  }
  try {
    return fingpd::FinGroupoid(std::move(onames), std::move(anames), std::move(src), std::move(tgt), std::move(unit),
                               std::move(inv), entries);
  } catch (const fingpd::SizeLimitError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

inline Json encode_fin_functor(const fingpd::FinFunctor& f) {
  Json o = Json::object();
  o["source"] = encode_groupoid(*f.source);
  o["target"] = encode_groupoid(*f.target);
  Json objs = Json::object(), arrs = Json::object();
  for (fingpd::Index x = 0; x < f.source->object_count(); ++x)
    objs[f.source->objects()[x]] = f.target->objects()[f.object(x)];
  for (fingpd::Index a = 0; a < f.source->arrow_count(); ++a)
    arrs[f.source->arrows()[a]] = f.target->arrows()[f.arrow(a)];
  o["objects"] = objs;
  o["arrows"] = arrs;
  return o;
}

namespace detail {

inline std::vector<fingpd::Index> decode_label_map(const Json& j, const std::string& path, const fingpd::Labels& from,
                                                   const fingpd::Labels& to, const char* what) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  std::vector<fingpd::Index> out;
  for (const auto& n : from.names()) {
    if (!j.contains(n)) throw SchemaError(path, std::string("no image for ") + what + " '" + n + "'");
    out.push_back(lookup(to, j.at(n), path + "." + n, what));
  }
  if (j.size() != from.size()) throw SchemaError(path, std::string("images given for unknown ") + what + "s");
  return out;
}

/// Reuses the source groupoid when the target is identical.
inline std::pair<fingpd::GroupoidPtr, fingpd::GroupoidPtr> decode_pair(const Json& j, const std::string& path,
                                                                       const char* a, const char* b) {
  auto ga = fingpd::share(decode_groupoid(field(j, path, a), path + "." + a));
  if (field(j, path, a) == field(j, path, b)) return {ga, ga};
  return {ga, fingpd::share(decode_groupoid(field(j, path, b), path + "." + b))};
}

}  // namespace detail

inline fingpd::FinFunctor decode_fin_functor(const Json& j, const std::string& path) {
  auto [g, h] = detail::decode_pair(j, path, "source", "target");
  auto objs = detail::decode_label_map(detail::field(j, path, "objects"), path + ".objects", g->objects(), h->objects(), "object");
  auto arrs = detail::decode_label_map(detail::field(j, path, "arrows"), path + ".arrows", g->arrows(), h->arrows(), "arrow");
  return fingpd::FinFunctor(g, h, std::move(objs), std::move(arrs));
}

inline Json encode_fin_bibundle(const fingpd::FinBibundle& b) {
  Json o = Json::object();
  o["left"] = encode_groupoid(*b.g);
  o["right"] = encode_groupoid(*b.h);
  Json elems = Json::array();
  for (fingpd::Index p = 0; p < b.size(); ++p) {
    Json e = Json::object();
    e["name"] = b.elements()[p];
    e["left_anchor"] = b.g->objects()[b.a_left(p)];
    e["right_anchor"] = b.h->objects()[b.a_right(p)];
    elems.push_back(e);
  }
  o["elements"] = elems;
  Json left = Json::array(), right = Json::array();
  for (const auto& e : b.left_entries())
    left.push_back(Json::array({b.g->arrows()[e.arrow], b.elements()[e.element], b.elements()[e.result]}));
  for (const auto& e : b.right_entries())
    right.push_back(Json::array({b.elements()[e.element], b.h->arrows()[e.arrow], b.elements()[e.result]}));
  o["left_action"] = left;
  o["right_action"] = right;
  return o;
}

inline fingpd::FinBibundle decode_fin_bibundle(const Json& j, const std::string& path) {
  using fingpd::Index;
  auto [g, h] = detail::decode_pair(j, path, "left", "right");
  const Json& elems = detail::array_field(j, path, "elements");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    std::string p = path + ".elements[" + std::to_string(k) + "]";
    std::string n = detail::string_value(detail::field(elems[k], p, "name"), p + ".name");
    if (std::find(names.begin(), names.end(), n) != names.end()) throw SchemaError(p, "duplicate element '" + n + "'");
    names.push_back(n);
  }
  fingpd::Labels labels(names);
  std::vector<Index> al, ar;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    std::string p = path + ".elements[" + std::to_string(k) + "]";
    al.push_back(detail::lookup(g->objects(), detail::field(elems[k], p, "left_anchor"), p + ".left_anchor", "object"));
    ar.push_back(detail::lookup(h->objects(), detail::field(elems[k], p, "right_anchor"), p + ".right_anchor", "object"));
  }
  auto triples = [&](const char* key, bool arrow_first, const fingpd::GroupoidPtr& gp) {
    const Json& a = detail::array_field(j, path, key);
    std::vector<fingpd::ActEntry> out;
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::string p = path + "." + key + "[" + std::to_string(k) + "]";
      if (!a[k].is_array() || a[k].size() != 3) throw SchemaError(p, "expected a triple");
      Index arrow = detail::lookup(gp->arrows(), a[k][arrow_first ? 0 : 1], p, "arrow");
      Index elem = detail::lookup(labels, a[k][arrow_first ? 1 : 0], p, "element");
      Index res = detail::lookup(labels, a[k][2], p, "element");
      out.push_back({arrow, elem, res});
    }
    return out;
  };
  auto left = triples("left_action", true, g);
  auto right = triples("right_action", false, h);
  try {
    return fingpd::FinBibundle(g, h, std::move(names), std::move(al), std::move(ar), left, right);
  } catch (const fingpd::SizeLimitError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

// ---------------------------------------------------------------------------
// Typed documents

using Structure = std::variant<LieAlgebra, CrossedModule, Lie2Algebra, Lie2Functor, LieBibundle, fingpd::FinGroupoid,
                               fingpd::FinFunctor, fingpd::FinBibundle, CocycleData,
                               std::pair<CocycleData, std::vector<Cell>>>;

/// Decodes the payload according to the kind. Shape errors found by the
/// constructors are reported as schema errors.
inline Structure decode(const Document& d) {
  const std::string p = "payload";
  try {
    if (d.kind == "lie_algebra") return decode_lie_algebra(d.payload, p);
    if (d.kind == "crossed_module") return decode_crossed_module(d.payload, p);
    if (d.kind == "lie2_algebra") return decode_lie2(d.payload, p);
    if (d.kind == "lie2_functor") return decode_lie2_functor(d.payload, p);
    if (d.kind == "lie_bibundle") return decode_lie_bibundle(d.payload, p);
    if (d.kind == "fin_groupoid") return decode_groupoid(d.payload, p);
    if (d.kind == "fin_functor") return decode_fin_functor(d.payload, p);
    if (d.kind == "fin_bibundle") return decode_fin_bibundle(d.payload, p);
    if (d.kind == "cocycle") return decode_cocycle(d.payload, p);
    if (d.kind == cell_list_kind) return decode_cell_list(d.payload, p);
  } catch (const SchemaError&) {
    throw;
  } catch (const fingpd::SizeLimitError&) {
    throw;
  } catch (const DimensionError& e) {
    throw SchemaError(p, e.what());
  } catch (const std::out_of_range& e) {
    throw SchemaError(p, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(p, e.what());
  }
  throw SchemaError("kind", "unknown kind '" + d.kind + "'");
}

inline Document make_document(std::string kind, std::string name, Json payload) {
  Document d;
  d.kind = std::move(kind);
  d.name = std::move(name);
  d.payload = std::move(payload);
  return d;
}

inline Document document_of(const std::string& name, const LieAlgebra& x) { return make_document("lie_algebra", name, encode_lie_algebra(x)); }
inline Document document_of(const std::string& name, const CrossedModule& x) { return make_document("crossed_module", name, encode_crossed_module(x)); }
inline Document document_of(const std::string& name, const Lie2Algebra& x) { return make_document("lie2_algebra", name, encode_lie2(x)); }
inline Document document_of(const std::string& name, const Lie2Functor& x) { return make_document("lie2_functor", name, encode_lie2_functor(x)); }
inline Document document_of(const std::string& name, const LieBibundle& x) { return make_document("lie_bibundle", name, encode_lie_bibundle(x)); }
inline Document document_of(const std::string& name, const fingpd::FinGroupoid& x) { return make_document("fin_groupoid", name, encode_groupoid(x)); }
inline Document document_of(const std::string& name, const fingpd::FinFunctor& x) { return make_document("fin_functor", name, encode_fin_functor(x)); }
inline Document document_of(const std::string& name, const fingpd::FinBibundle& x) { return make_document("fin_bibundle", name, encode_fin_bibundle(x)); }
inline Document document_of(const std::string& name, const CocycleData& x) { return make_document("cocycle", name, encode_cocycle(x)); }

// ---------------------------------------------------------------------------
// Reports

inline Json report_json(const Report& r) {
  Json o = Json::object();
  o["subject"] = r.subject;
  o["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = Json::object();
    e["id"] = c.id;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  o["checks"] = checks;
  o["derived"] = r.derived;
  return o;
}

inline std::string report_text(const Report& r) {
  std::string out = r.subject + ": " + (r.passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& c : r.checks) {
    out += std::string("  ") + (c.pass ? "pass" : "FAIL") + "  " + c.id;
    if (!c.detail.empty()) out += "  -- " + c.detail;
    out += "\n";
  }
  for (auto it = r.derived.begin(); it != r.derived.end(); ++it) out += "  " + it.key() + " = " + it.value().dump() + "\n";
  return out;
}

}  // namespace lie2::io
