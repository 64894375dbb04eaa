#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gad/diamond.hpp"
#include "gad/homology.hpp"

namespace gad {

struct BracketTerm {
  std::int64_t coeff = 0;
  std::size_t symbol = 0;
  friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

/// Sparse element of the algebra: symbol index -> coefficient, no zeros.
using LieElement = std::map<std::size_t, std::int64_t>;

/// Integral Lie algebra given by structure constants on an ordered base.
/// Only pairs i < j are stored; the bracket is extended antisymmetrically.
class LieBasis {
 public:
  LieBasis() = default;

  /// Keys (i, j) with i > j are stored negated. Throws InputError on
  /// duplicate or empty symbol names, out-of-range indices, or a nonzero
  /// bracket of a symbol with itself.
  LieBasis(std::vector<std::string> symbols,
           const std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm>>& brackets);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

  /// [e_i, e_j] as a sparse element.
  LieElement bracket(std::size_t i, std::size_t j) const;
  LieElement bracket(const LieElement& x, const LieElement& y) const;

  /// Nonzero stored brackets, keyed by (i, j) with i < j.
  const std::map<std::pair<std::size_t, std::size_t>, LieElement>& table() const noexcept { return table_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::pair<std::size_t, std::size_t>, LieElement> table_;
};

/// Strictly upper triangular (n+1)x(n+1) matrices with the commutator
/// bracket. Symbols e_ij (0 <= i < j <= n) are ordered by j, then by i
/// descending: e01 e12 e02 e23 e13 e03 ...
LieBasis type_a(std::size_t n);
/// Index of e_ij in type_a's symbol order.
std::size_t type_a_index(std::size_t i, std::size_t j);

struct JacobiCheck {
  bool valid = true;
  std::optional<std::array<std::size_t, 3>> triple;
};

JacobiCheck validate_lie(const LieBasis& lb);

/// The bracket as a signed single symbol, if it is one.
std::optional<std::pair<std::size_t, int>> unit_bracket(const LieBasis& lb, std::size_t a, std::size_t b);

/// Ordered triple (a, b, c) is adjacent: [a,b] and [b,c] are signed
/// symbols, [a,c] = 0, [[a,b],c] is a signed symbol and [a,b] differs
/// from [b,c].
bool adjacent(const LieBasis& lb, std::size_t a, std::size_t b, std::size_t c);

/// Which ordering of a four-element factorization [xi,eta] = [sigma,tau]
/// satisfied the factorization axiom.
struct FactorizationWitness {
  std::array<std::size_t, 4> ordering;  // xi, eta, sigma, tau
  std::array<std::size_t, 3> adjacent;  // alpha, beta, gamma
};

struct RootSystemCheck {
  bool ok = true;
  int failed_axiom = 0;
  std::string detail;
  std::vector<FactorizationWitness> factorizations;
};

RootSystemCheck is_diamond_root_system(const LieBasis& lb);

/// Exterior chain graph: vertex m is the monomial whose symbols are the set
/// bits of m, graded by length. Throws DomainError if d∘d fails, and
/// InputError above 24 symbols.
ChainGraph exterior_chain_graph(const LieBasis& lb);

/// Terms (monomial, coefficient) of d applied to the monomial `mask`.
std::vector<std::pair<std::uint64_t, std::int64_t>> exterior_boundary(const LieBasis& lb, std::uint64_t mask);

/// Chain graph on the listed monomials (vertex i is masks[i]) with the
/// edges of the exterior chain graph between them.
ChainGraph exterior_subgraph(const LieBasis& lb, const std::vector<std::uint64_t>& masks);

/// Monomial name, "1" for the empty one.
std::string monomial_name(const LieBasis& lb, std::uint64_t mask);

/// Type tag in 1..6. Throws InvariantViolation when no type or several
/// types match.
int classify_diamond(const LieBasis& lb, const Diamond& dm);

struct ComponentHomology {
  std::vector<std::size_t> vertices;
  /// Unset when the component is not a deformation graph.
  std::optional<std::int64_t> rank;
  HomologyTable homology;
  ChainGraph chain;
};

/// Connected components of a chain graph with their ranks and integral
/// homology; components are processed on `jobs` threads.
std::vector<ComponentHomology> component_decomposition(const ChainGraph& cg, unsigned jobs = 1);

/// Degree-wise direct sum of the component tables.
HomologyTable sum_homology(const std::vector<ComponentHomology>& parts);

struct TorsionExclusionReport : CheckReport {
  std::uint64_t p = 0;
  std::size_t checked = 0;
  std::size_t exempt = 0;
};

/// Components with p not dividing the rank have no p-torsion and their
/// mod-p Betti numbers equal the free ranks. Components without a rank
/// are counted as exempt.
TorsionExclusionReport torsion_exclusion_check(const std::vector<ComponentHomology>& parts, std::uint64_t p);

}  // namespace gad
