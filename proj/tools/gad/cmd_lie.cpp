#include <algorithm>
#include <sstream>

#include "commands.hpp"
#include "gad/diamond.hpp"
#include "gad/fixtures.hpp"
#include "gad/lie.hpp"

namespace gad::cli {
namespace {

constexpr std::size_t kMaxTypeA = 5;
constexpr std::size_t kMaxSymbols = 16;

LieBasis load(const LieArgs& a, Report& r, bool check_jacobi = true) {
  if (!a.file.empty() && !a.type.empty()) throw InputError("give either --file or --type, not both");
  if (!a.file.empty()) {
    r.input(a.file);
    return read_lie_file(a.file, check_jacobi);
  }
  if (a.type != "A") throw InputError(a.type.empty() ? "give --file or --type A" : "only --type A is built in");
  if (a.n > kMaxTypeA) throw InputError("--n must be between 0 and " + std::to_string(kMaxTypeA));
  r.data()["type"] = "A" + std::to_string(a.n);
  return type_a(a.n);
}

std::string triple_text(const LieBasis& lb, const std::array<std::size_t, 3>& t) {
  return lb.symbol(t[0]) + ", " + lb.symbol(t[1]) + ", " + lb.symbol(t[2]);
}

void require_small(const LieBasis& lb) {
  if (lb.size() > kMaxSymbols)
    throw InputError("exterior graph limited to " + std::to_string(kMaxSymbols) + " symbols, got " +
                     std::to_string(lb.size()));
}

}  // namespace

void lie_validate(const LieArgs& a, const Options&, Report& r) {
  const LieBasis lb = load(a, r, false);
  r.line(std::to_string(lb.size()) + " symbols, " + std::to_string(lb.table().size()) + " nonzero brackets");
  r.data()["symbols"] = lb.size();
  r.data()["brackets"] = lb.table().size();
  const auto jac = validate_lie(lb);
  r.data()["jacobi"] = jac.valid;
  r.check("Jacobi identity", jac.valid ? Verdict::pass : Verdict::fail, "Jacobi identity",
          jac.triple ? "fails on " + triple_text(lb, *jac.triple) : "");
}

void lie_diamond_check(const LieArgs& a, const Options&, Report& r) {
  const LieBasis lb = load(a, r);
  const auto rs = is_diamond_root_system(lb);
  r.data()["root_system"] = rs.ok;
  if (!rs.ok) {
    r.line("not a diamond root system: axiom " + std::to_string(rs.failed_axiom) + " fails, " + rs.detail);
    r.data()["failed_axiom"] = rs.failed_axiom;
    r.data()["detail"] = rs.detail;
    return;
  }
  r.line("diamond root system, " + std::to_string(rs.factorizations.size()) + " factorizations");
  Json facs = Json::array();
  for (const auto& w : rs.factorizations) {
    const auto& o = w.ordering;
    facs.push_back({{"ordering", {lb.symbol(o[0]), lb.symbol(o[1]), lb.symbol(o[2]), lb.symbol(o[3])}},
                    {"adjacent", {lb.symbol(w.adjacent[0]), lb.symbol(w.adjacent[1]), lb.symbol(w.adjacent[2])}}});
  }
  r.data()["factorizations"] = std::move(facs);

  require_small(lb);
  const ChainGraph cg = exterior_chain_graph(lb);
  const Graph& g = cg.graph();
  const auto dc = is_diamond_graph(g);
  r.check("exterior graph is a diamond graph", dc.is_diamond ? Verdict::pass : Verdict::fail,
          "diamond root systems give GAD graphs", dc.reason);
  if (!dc.is_diamond) return;
  const auto sc = check_signature(g, cg.connection());
  r.check("exterior connection is a signature", sc.ok() ? Verdict::pass : Verdict::fail,
          "diamond root systems give GAD graphs");

  const auto diamonds = enumerate_diamonds(g);
  std::array<std::size_t, 7> counts{};
  try {
    for (const auto& d : diamonds) ++counts[static_cast<std::size_t>(classify_diamond(lb, d))];
  } catch (const InvariantViolation& e) {
    r.violation(e);
    return;
  }
  std::string text;
  Json types = Json::object();
  for (int t = 1; t <= 6; ++t) {
    text += (t > 1 ? ", " : "") + std::string("type ") + std::to_string(t) + ": " + std::to_string(counts[t]);
    types[std::to_string(t)] = counts[t];
  }
  r.line(std::to_string(diamonds.size()) + " diamonds (" + text + ")");
  r.data()["diamond_types"] = std::move(types);
  r.check("every diamond has exactly one type", Verdict::pass, "six diamond types");
}

void lie_homology(const LieArgs& a, const Options& opt, Report& r) {
  const LieBasis lb = load(a, r);
  require_small(lb);
  const ChainGraph cg = exterior_chain_graph(lb);
  const auto parts = component_decomposition(cg, opt.jobs);
  const HomologyTable total = sum_homology(parts);

  std::size_t rank0 = 0;
  for (const auto& p : parts) rank0 += p.rank == 0;
  r.line(std::to_string(cg.graph().size()) + " monomials, " + std::to_string(parts.size()) + " components, " +
         std::to_string(rank0) + " of rank 0");
  std::istringstream lines(format_homology(total));
  for (std::string line; std::getline(lines, line);) r.line(line);
  r.data()["components"] = parts.size();
  r.data()["rank0_components"] = rank0;
  r.data()["homology"] = homology_to_json(total);

  if (a.mod) {
    const auto hp = homology(cg, Coefficients::prime(a.mod));
    r.line("mod " + std::to_string(a.mod) + ": " + homology_summary(hp));
    r.data()["homology_mod_p"] = homology_to_json(hp);
  }

  if (is_diamond_root_system(lb).ok) {
    r.check("free rank equals the number of rank-0 components",
            total.total_free_rank() == rank0 ? Verdict::pass : Verdict::fail, "free part of diamond homology",
            std::to_string(total.total_free_rank()) + " vs " + std::to_string(rank0));
    std::vector<std::uint64_t> primes{2, 3, 5};
    if (a.mod && std::find(primes.begin(), primes.end(), a.mod) == primes.end()) primes.push_back(a.mod);
    for (std::uint64_t p : primes) r.check("no " + std::to_string(p) + "-torsion", torsion_exclusion_check(parts, p));
  } else {
    r.check("free rank equals the number of rank-0 components", Verdict::not_applicable);
  }
}

void fixtures(const std::string& dir, Report& r) {
  for (const auto& path : fixtures::write_all(dir)) r.line("wrote " + path);
}

}  // namespace gad::cli
