#include <algorithm>
#include <sstream>

#include "commands.hpp"
#include "gad/connection.hpp"
#include "gad/diamond.hpp"
#include "gad/graph.hpp"
#include "gad/homology.hpp"
#include "gad/io.hpp"
#include "gad/rep_matrix.hpp"

namespace gad::cli {

std::string homology_summary(const HomologyTable& h, const std::string& symbol) {
  std::string out;
  for (const auto& [k, g] : h.groups) {
    if (g.is_zero()) continue;
    if (!out.empty()) out += ", ";
    out += symbol + std::to_string(k) + " = " + format_group(g, h.coeff);
  }
  return out.empty() ? "all groups vanish" : out;
}

namespace {

GraphFile load(const GraphArgs& a, Report& r) {
  r.input(a.file);
  return read_graph_file(a.file);
}

std::string ids(const Graph& g, const std::vector<std::size_t>& vs, std::size_t limit = 8) {
  std::string out;
  for (std::size_t i = 0; i < vs.size() && i < limit; ++i) out += (i ? " " : "") + g.id(vs[i]);
  if (vs.size() > limit) out += " ... (" + std::to_string(vs.size()) + ")";
  return out;
}

// An edge joining two vertices at the same distance from the component's
// first vertex: the end of an odd cycle.
std::string odd_cycle_edge(const Graph& g) {
  for (const auto& comp : g.components()) {
    const auto dist = distances_from(g, comp.front());
    for (std::size_t v : comp)
      for (std::size_t w : g.neighbors(v))
        if (v < w && dist[v] == dist[w])
          return g.id(v) + " - " + g.id(w) + " at distance " + std::to_string(*dist[v]) + " from " +
                 g.id(comp.front());
  }
  return {};
}

void write_dot(const std::string& path, const Graph& g, const Gradation* grade, const Connection* nu) {
  if (path.empty()) return;
  write_text_file(path, to_dot(g, grade, nu));
}

const Connection& require_connection(const GraphFile& f) {
  if (!f.connection) throw InputError("graph file has no connection (edge \"nu\" values)");
  const auto check = validate_connection(f.graph, *f.connection);
  if (!check.valid) {
    const auto& v = check.violations.front();
    std::string what = v.kind == ConnectionViolation::Kind::asymmetric     ? "asymmetric"
                       : v.kind == ConnectionViolation::Kind::zero_on_edge ? "zero on an edge"
                                                                           : "nonzero off the edges";
    throw InputError("invalid connection: " + what + " at " + f.graph.id(v.a) + ", " + f.graph.id(v.b));
  }
  return *f.connection;
}

}  // namespace

void graph_grade(const GraphArgs& a, const Options&, Report& r) {
  const GraphFile f = load(a, r);
  const Graph& g = f.graph;
  r.data()["vertices"] = g.size();
  r.data()["edges"] = g.edge_count();
  const auto parts = is_gradable(g);
  r.data()["gradable"] = parts.has_value();
  if (!parts) {
    r.line("not gradable: edge " + odd_cycle_edge(g));
    if (f.gradation) r.line("the given gradation is invalid");
    write_dot(a.dot, g, nullptr, f.connection ? &*f.connection : nullptr);
    return;
  }
  r.line("gradable, " + std::to_string(parts->size()) + " component(s)");
  Json comps = Json::array();
  for (const auto& d : *parts) {
    r.line("  distance components: " + std::to_string(d.part1.size()) + " {" + ids(g, d.part1) + "} and " +
           std::to_string(d.part2.size()) + " {" + ids(g, d.part2) + "}");
    Json c;
    c["part1"] = Json::array();
    c["part2"] = Json::array();
    for (auto v : d.part1) c["part1"].push_back(g.id(v));
    for (auto v : d.part2) c["part2"].push_back(g.id(v));
    comps.push_back(std::move(c));
  }
  r.data()["components"] = std::move(comps);

  const Gradation rep = representation_gradation(g);
  r.check("representation gradation is valid", is_valid_gradation(g, rep) ? Verdict::pass : Verdict::fail,
          "distance gradation");
  bool distances_ok = true;
  for (const auto& comp : g.components()) {
    const auto dist = distances_from(g, comp.front());
    for (std::size_t v : comp)
      for (std::size_t w : g.neighbors(v))
        if (!dist[v] || !dist[w] || (*dist[v] > *dist[w] ? *dist[v] - *dist[w] : *dist[w] - *dist[v]) != 1)
          distances_ok = false;
  }
  r.check("distance function is a gradation", distances_ok ? Verdict::pass : Verdict::fail, "distance gradation");

  const Gradation* shown = &rep;
  if (f.gradation) {
    if (!is_valid_gradation(g, *f.gradation)) {
      r.line("the given gradation is invalid");
      r.data()["given_gradation_valid"] = false;
    } else {
      shown = &*f.gradation;
      const auto red = reduce_to_representation(GradedGraph(g, *f.gradation));
      const bool equiv = gradations_equivalent(g, *f.gradation, rep);
      r.data()["given_gradation_valid"] = true;
      r.data()["reduction_moves"] = red.moves.size();
      r.line("the given gradation reduces to a {0,1} gradation in " + std::to_string(red.moves.size()) +
             " moves; " + (equiv ? "it is" : "it is not") + " equivalent to the representation gradation");
      r.check("reduction reaches a {0,1} gradation",
              is_valid_gradation(g, red.result) &&
                      std::all_of(red.result.values.begin(), red.result.values.end(),
                                  [](Grade x) { return x == 0 || x == 1; })
                  ? Verdict::pass
                  : Verdict::fail,
              "reduction to representation gradation");
    }
  }
  Json grades = Json::object();
  for (std::size_t v = 0; v < g.size(); ++v) grades[g.id(v)] = rep[v];
  r.data()["representation_gradation"] = std::move(grades);
  write_dot(a.dot, g, shown, f.connection ? &*f.connection : nullptr);
}

void graph_connection(const GraphArgs& a, const Options&, Report& r) {
  const GraphFile f = load(a, r);
  const Graph& g = f.graph;
  const Connection& nu = require_connection(f);

  const auto def = is_deformable(g, nu);
  r.data()["deformable"] = def.deformable;
  if (def.deformable) {
    r.line("deformable");
  } else {
    const auto [x, y] = def.violations.front();
    r.line("not deformable: " + std::to_string(def.violations.size()) + " pair(s) with a nonzero two-step sum, first " +
           g.id(x) + ", " + g.id(y));
  }

  Json ranks = Json::array();
  const auto comps = g.components();
  if (def.deformable) {
    for (const auto& comp : comps) {
      const Graph sub = g.induced(comp);
      const Connection snu = induced(g, nu, comp);
      try {
        const auto rank = graph_rank(sub, snu);
        ranks.push_back(rank);
        r.line("component of " + g.id(comp.front()) + ": rank " + std::to_string(rank));
      } catch (const InvariantViolation& e) {
        r.violation(e);
      }
    }
    r.data()["ranks"] = std::move(ranks);
  }

  if (!is_gradable(g)) {
    r.line("not gradable, no representation matrix");
    write_dot(a.dot, g, f.gradation ? &*f.gradation : nullptr, &nu);
    return;
  }
  const RepMatrix m = representation_matrix(g, nu);
  const std::size_t dim = global_dimension(m);
  r.line("representation matrix:");
  std::istringstream rows(format_matrix(m));
  for (std::string line; std::getline(rows, line);) r.line("  " + line);
  r.line("global dimension " + std::to_string(dim));
  r.data()["matrix"] = matrix_to_json(m);
  r.data()["global_dimension"] = dim;

  // Two grade levels cannot violate the chain condition.
  const ChainGraph rep(GradedGraph(g, representation_gradation(g)), nu);
  const auto h_rep = homology(rep);
  r.check("global dimension equals total free rank", dim == h_rep.total_free_rank() ? Verdict::pass : Verdict::fail,
          "global dimension invariance",
          "D = " + std::to_string(dim) + ", free rank " + std::to_string(h_rep.total_free_rank()));
  if (f.gradation && is_chain_graph(GradedGraph(g, *f.gradation), nu).valid) {
    const auto h = homology(ChainGraph(GradedGraph(g, *f.gradation), nu));
    r.check("global dimension equals free rank under the given gradation",
            dim == h.total_free_rank() ? Verdict::pass : Verdict::fail, "global dimension invariance",
            "D = " + std::to_string(dim) + ", free rank " + std::to_string(h.total_free_rank()));
  }

  if (def.deformable && comps.size() == 1 && g.size() > 1) {
    try {
      const BigInt chi = characteristic_number(g, nu);
      const std::size_t vol = volume(g, nu);
      const std::int64_t rank = graph_rank(g, nu);
      BigInt power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(rank), vol);
      r.line("characteristic number " + chi.get_str() + ", volume " + std::to_string(vol));
      r.data()["characteristic_number"] = chi.get_str();
      r.data()["volume"] = vol;
      r.check("characteristic number squared equals rank to the volume",
              chi * chi == power ? Verdict::pass : Verdict::fail, "characteristic number of a deformation graph",
              chi.get_str() + "^2 vs " + std::to_string(rank) + "^" + std::to_string(vol));
    } catch (const InvariantViolation& e) {
      r.violation(e);
    }
  }
  write_dot(a.dot, g, f.gradation ? &*f.gradation : nullptr, &nu);
}

void graph_diamond(const GraphArgs& a, const Options&, Report& r) {
  const GraphFile f = load(a, r);
  const Graph& g = f.graph;
  const auto dc = is_diamond_graph(g);
  r.data()["diamond"] = dc.is_diamond;
  if (!dc.is_diamond) {
    r.line("not a diamond graph: " + dc.reason);
    return;
  }
  const auto diamonds = enumerate_diamonds(g);
  r.data()["diamonds"] = diamonds.size();

  const auto comps = g.components();
  std::vector<std::size_t> ranks;
  for (const auto& comp : comps) {
    try {
      ranks.push_back(diamond_rank(g.induced(comp)));
    } catch (const InvariantViolation& e) {
      r.violation(e);
      return;
    }
  }
  std::string rank_text;
  for (std::size_t i = 0; i < ranks.size(); ++i) rank_text += (i ? "/" : "") + std::to_string(ranks[i]);
  r.data()["rank"] = ranks.size() == 1 ? Json(ranks[0]) : Json(ranks);

  const auto parts = is_gradable(g);
  r.data()["gradable"] = parts.has_value();
  std::string summary = "diamond graph with " + std::to_string(diamonds.size()) + " diamonds, rank " + rank_text;
  if (!parts) {
    r.line(summary + ", not gradable, no signature");
    r.data()["signature"] = nullptr;
    return;
  }

  std::string vol_text;
  for (std::size_t i = 0; i < parts->size(); ++i) {
    const auto& d = (*parts)[i];
    vol_text += (i ? "/" : "") + (d.part1.size() == d.part2.size()
                                      ? std::to_string(d.part1.size())
                                      : std::to_string(d.part1.size()) + "+" + std::to_string(d.part2.size()));
  }
  r.line(summary);
  const auto obstruction = signature_obstruction(g);
  const auto search = search_signature(g);
  const bool found = search.signature.has_value();
  r.data()["volume"] = vol_text;
  r.data()["signature_found"] = found;
  r.data()["obstruction"] = obstruction ? Json(*obstruction) : Json(nullptr);
  r.line("rank " + rank_text + ", volume " + vol_text + (found ? ", signature found" : ", no signature"));
  if (!found) r.line("search: " + search.failure);
  if (obstruction) r.line("obstruction: " + *obstruction);

  if (obstruction)
    r.check("size obstruction agrees with the search", found ? Verdict::fail : Verdict::pass,
            "characteristic number of a deformation graph", *obstruction);
  else
    r.check("size obstruction agrees with the search", Verdict::not_applicable);
  if (search.constraints_consistent && !search.deformable)
    r.line("note: the per-diamond sign condition holds but the connection is not deformable");

  if (found) {
    const auto sc = check_signature(g, *search.signature);
    r.check("found connection is a signature", sc.ok() ? Verdict::pass : Verdict::fail, "signature");
    if (f.connection && check_signature(g, *f.connection).ok()) {
      try {
        signatures_equivalent(g, *f.connection, *search.signature);
        r.check("given signature is equivalent to the found one", Verdict::pass, "uniqueness of signatures");
      } catch (const InvariantViolation& e) {
        r.violation(e);
      }
    }
    if (!a.out.empty()) {
      const Gradation grade = f.gradation ? *f.gradation : representation_gradation(g);
      write_text_file(a.out, graph_to_json(g, &grade, &*search.signature).dump(2) + "\n");
      r.line("wrote " + a.out);
    }
  }
  write_dot(a.dot, g, f.gradation ? &*f.gradation : nullptr, found ? &*search.signature : nullptr);
}

void graph_homology(const GraphArgs& a, const Options&, Report& r) {
  const GraphFile f = load(a, r);
  if (!f.gradation) throw InputError("graph file has no gradation (vertex \"grade\" values)");
  const Connection& nu = require_connection(f);
  const ChainGraph cg(GradedGraph(f.graph, *f.gradation), nu);
  const Coefficients coeff = a.mod ? Coefficients::prime(a.mod) : Coefficients::integers();

  const auto h = homology(cg, coeff);
  std::istringstream lines(format_homology(h));
  for (std::string line; std::getline(lines, line);) r.line(line);
  r.data()["homology"] = homology_to_json(h);
  if (a.cohomology) {
    const auto c = cohomology(cg, coeff);
    std::istringstream cl(format_homology(c, "H^"));
    for (std::string line; std::getline(cl, line);) r.line(line);
    r.data()["cohomology"] = homology_to_json(c);
  }

  const auto td = verify_torsion_duality(cg);
  r.check("torsion duality", td);
  if (a.mod) r.check("field vanishing mod " + std::to_string(a.mod), field_vanishing_check(cg, a.mod));
  write_dot(a.dot, f.graph, &*f.gradation, &nu);
}

}  // namespace gad::cli
