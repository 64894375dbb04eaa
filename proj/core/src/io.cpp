#include "gad/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gad/errors.hpp"

namespace gad {

namespace {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

template <class T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(where + ": bad \"" + key + "\": " + e.what());
  }
}

Json big_to_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer " + j.dump());
    return x;
  }
  throw InputError("expected integer, got " + j.dump());
}

}  // namespace

GraphFile parse_graph_json(const std::string& text) {
  const Json j = parse_json(text, "graph");
  if (!j.is_object()) throw InputError("graph: top level must be an object");
  const Json vertices = field<Json>(j, "vertices", "graph");
  const Json edges = j.contains("edges") ? j.at("edges") : Json::array();
  if (!vertices.is_array() || !edges.is_array()) throw InputError("graph: vertices and edges must be arrays");

  std::vector<VertexId> ids;
  std::vector<std::optional<Grade>> grades;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "graph: vertex " + std::to_string(i);
    const Json& v = vertices[i];
    ids.push_back(v.is_string() ? v.get<std::string>() : field<std::string>(v, "id", where));
    if (v.is_object() && v.contains("grade") && !v.at("grade").is_null()) grades.push_back(field<Grade>(v, "grade", where));
    else grades.push_back(std::nullopt);
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<std::optional<std::int64_t>> weights;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "graph: edge " + std::to_string(i);
    const Json& e = edges[i];
    pairs.emplace_back(field<std::string>(e, "u", where), field<std::string>(e, "v", where));
    if (e.contains("nu") && !e.at("nu").is_null()) weights.push_back(field<std::int64_t>(e, "nu", where));
    else weights.push_back(std::nullopt);
  }

  GraphFile out;
  out.graph = Graph(ids, pairs);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v] : pairs) {
    const std::size_t a = out.graph.index(u), b = out.graph.index(v);
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw InputError("graph: edge " + u + " - " + v + " listed twice");
  }
  const auto graded = std::count_if(grades.begin(), grades.end(), [](auto& g) { return g.has_value(); });
  if (graded == static_cast<std::ptrdiff_t>(grades.size()) && !grades.empty()) {
    Gradation g;
    for (auto& x : grades) g.values.push_back(*x);
    out.gradation = std::move(g);
  } else if (graded != 0) {
    throw InputError("graph: grades must be given for all vertices or for none");
  }
  const auto weighted = std::count_if(weights.begin(), weights.end(), [](auto& w) { return w.has_value(); });
  if (weighted == static_cast<std::ptrdiff_t>(weights.size()) && !weights.empty()) {
    Connection nu;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      nu.set(out.graph.index(pairs[i].first), out.graph.index(pairs[i].second), *weights[i]);
    out.connection = std::move(nu);
  } else if (weighted != 0) {
    throw InputError("graph: nu must be given for all edges or for none");
  }
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  try {
    return parse_graph_json(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json graph_to_json(const Graph& g, const Gradation* grade, const Connection* nu) {
  Json vs = Json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    Json o{{"id", g.id(v)}};
    if (grade) o["grade"] = (*grade)[v];
    vs.push_back(std::move(o));
  }
  Json es = Json::array();
  for (auto [a, b] : g.edges()) {
    Json o{{"u", g.id(a)}, {"v", g.id(b)}};
    if (nu) o["nu"] = (*nu)(a, b);
    es.push_back(std::move(o));
  }
  return Json{{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

Json graph_to_json(const GraphFile& f) {
  return graph_to_json(f.graph, f.gradation ? &*f.gradation : nullptr, f.connection ? &*f.connection : nullptr);
}

std::string to_dot(const Graph& g, const Gradation* grade, const Connection* nu) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "graph G {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::string label = g.id(v);
    if (grade) label += ":" + std::to_string((*grade)[v]);
    os << "  " << quote(g.id(v)) << " [label=" << quote(label) << "];\n";
  }
  for (auto [a, b] : g.edges()) {
    os << "  " << quote(g.id(a)) << " -- " << quote(g.id(b));
    if (nu) os << " [label=" << quote(std::to_string((*nu)(a, b))) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json matrix_to_json(const RepMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.entries.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.entries.cols(); ++c) row.push_back(m.entries(r, c));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", std::move(rows)}, {"row_labels", m.row_labels}, {"col_labels", m.col_labels}};
}

RepMatrix matrix_from_json(const Json& j) {
  const auto rows = field<std::vector<std::vector<std::int64_t>>>(j, "rows", "matrix");
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw InputError("matrix: ragged rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  if (j.contains("cols") && nc == 0) m = IntMatrix(rows.size(), field<std::size_t>(j, "cols", "matrix"));
  RepMatrix out = RepMatrix::from_entries(std::move(m));
  if (j.contains("row_labels")) out.row_labels = field<std::vector<std::string>>(j, "row_labels", "matrix");
  if (j.contains("col_labels")) out.col_labels = field<std::vector<std::string>>(j, "col_labels", "matrix");
  if (out.row_labels.size() != out.entries.rows() || out.col_labels.size() != out.entries.cols())
    throw InputError("matrix: label counts do not match the shape");
  return out;
}

std::string format_matrix(const RepMatrix& m) {
  std::size_t w = 1;
  for (const auto& l : m.col_labels) w = std::max(w, l.size());
  std::size_t lw = 0;
  for (const auto& l : m.row_labels) lw = std::max(lw, l.size());
  for (std::size_t r = 0; r < m.entries.rows(); ++r)
    for (std::size_t c = 0; c < m.entries.cols(); ++c) w = std::max(w, std::to_string(m.entries(r, c)).size());
  auto pad = [](const std::string& s, std::size_t width) { return std::string(width - std::min(width, s.size()), ' ') + s; };
  std::ostringstream os;
  os << pad("", lw);
  for (const auto& l : m.col_labels) os << ' ' << pad(l, w);
  os << '\n';
  for (std::size_t r = 0; r < m.entries.rows(); ++r) {
    os << pad(m.row_labels[r], lw);
    for (std::size_t c = 0; c < m.entries.cols(); ++c) os << ' ' << pad(std::to_string(m.entries(r, c)), w);
    os << '\n';
  }
  return os.str();
}

Json homology_to_json(const HomologyTable& h) {
  Json groups = Json::object();
  for (const auto& [k, g] : h.groups) {
    Json t = Json::array();
    for (const auto& d : g.torsion()) t.push_back(big_to_json(d));
    groups[std::to_string(k)] = Json{{"free", g.free_rank()}, {"torsion", std::move(t)}};
  }
  return Json{{"coeff", h.coeff.name()}, {"groups", std::move(groups)}};
}

HomologyTable homology_from_json(const Json& j) {
  HomologyTable h;
  const auto coeff = field<std::string>(j, "coeff", "homology");
  if (coeff == "Z") h.coeff = Coefficients::integers();
  else if (coeff == "Q") h.coeff = Coefficients::rationals();
  else if (coeff.rfind("Fp:", 0) == 0) h.coeff = Coefficients::prime(std::stoull(coeff.substr(3)));
  else throw InputError("homology: unknown coefficients " + coeff);
  const Json groups = field<Json>(j, "groups", "homology");
  for (const auto& [key, g] : groups.items()) {
    std::vector<BigInt> torsion;
    for (const auto& d : field<Json>(g, "torsion", "homology")) torsion.push_back(big_from_json(d));
    AbelianGroup grp(field<std::size_t>(g, "free", "homology"), std::move(torsion));
    if (!grp.is_zero()) h.groups.emplace(std::stoll(key), std::move(grp));
  }
  return h;
}

std::string format_group(const AbelianGroup& g, const Coefficients& c) {
  if (c.kind == Coefficients::Kind::integers || g.is_zero()) return g.to_string();
  const std::string f = c.kind == Coefficients::Kind::rationals ? "Q" : "F" + std::to_string(c.p);
  return g.free_rank() == 1 ? f : f + "^" + std::to_string(g.free_rank());
}

std::string format_homology(const HomologyTable& h, const std::string& symbol) {
  if (h.all_zero()) return "all groups vanish\n";
  std::string out;
  for (const auto& [k, g] : h.groups) {
    if (g.is_zero()) continue;
    out += symbol + std::to_string(k) + " = " + format_group(g, h.coeff) + "\n";
  }
  return out;
}

LieBasis parse_lie_json(const std::string& text, bool check_jacobi) {
  const Json j = parse_json(text, "structure constants");
  const auto symbols = field<std::vector<std::string>>(j, "symbols", "structure constants");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) index.emplace(symbols[i], i);
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw InputError("structure constants: unknown symbol " + s);
    return it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm>> table;
  if (j.contains("brackets"))
    for (const auto& b : j.at("brackets")) {
      const std::size_t x = lookup(field<std::string>(b, "x", "bracket"));
      const std::size_t y = lookup(field<std::string>(b, "y", "bracket"));
      std::vector<BracketTerm> terms;
      for (const auto& t : field<Json>(b, "terms", "bracket"))
        terms.push_back({field<std::int64_t>(t, "c", "term"), lookup(field<std::string>(t, "z", "term"))});
      if (table.count({x, y}) || table.count({y, x}))
        throw InputError("structure constants: bracket of " + symbols[x] + ", " + symbols[y] + " given twice");
      table[{x, y}] = std::move(terms);
    }
  LieBasis lb(symbols, table);
  if (!check_jacobi) return lb;
  const auto jac = validate_lie(lb);
  if (!jac.valid) {
    const auto [a, b, c] = *jac.triple;
    throw InputError("structure constants: Jacobi identity fails for " + symbols[a] + ", " + symbols[b] + ", " +
                     symbols[c]);
  }
  return lb;
}

LieBasis read_lie_file(const std::string& path, bool check_jacobi) {
  try {
    return parse_lie_json(read_text_file(path), check_jacobi);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json lie_to_json(const LieBasis& lb) {
  Json brackets = Json::array();
  for (const auto& [key, e] : lb.table()) {
    Json terms = Json::array();
    for (auto [k, c] : e) terms.push_back(Json{{"c", c}, {"z", lb.symbol(k)}});
    brackets.push_back(Json{{"x", lb.symbol(key.first)}, {"y", lb.symbol(key.second)}, {"terms", std::move(terms)}});
  }
  return Json{{"symbols", lb.symbols()}, {"brackets", std::move(brackets)}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace gad
