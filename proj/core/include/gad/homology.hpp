#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gad/connection.hpp"
#include "gad/graph.hpp"
#include "gad/matrix.hpp"

namespace gad {

/// Finitely generated abelian group Z^free + Z/d1 + ... with d1 | d2 | ...
/// and every d > 1.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Drops unit divisors and sorts; throws InputError on a divisor <= 0 or a
  /// broken divisibility chain.
  AbelianGroup(std::size_t free_rank, std::vector<BigInt> torsion);

  static AbelianGroup cyclic(const BigInt& order);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<BigInt>& torsion() const noexcept { return torsion_; }
  bool is_zero() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion() const noexcept { return free_rank_ == 0; }
  /// Order of a finite group; throws DomainError if free_rank > 0.
  BigInt order() const;

  /// "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/6".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

/// Torsion invariants from arbitrary positive divisors (e.g. from a Smith
/// diagonal); divisors need not form a chain.
AbelianGroup abelian_group_from_divisors(std::size_t free_rank, const std::vector<BigInt>& divisors);

struct Coefficients {
  enum class Kind { integers, rationals, prime_field };
  Kind kind = Kind::integers;
  std::uint64_t p = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Kind::rationals, 0}; }
  /// Throws InputError unless p is prime.
  static Coefficients prime(std::uint64_t p);
  /// Characteristic 0 selects the rationals.
  static Coefficients field(std::uint64_t characteristic);

  /// "Z", "Q" or "Fp:<p>".
  std::string name() const;
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

/// Groups per degree; missing degrees are the zero group.
struct HomologyTable {
  Coefficients coeff;
  std::map<Grade, AbelianGroup> groups;

  const AbelianGroup& at(Grade k) const;
  bool all_zero() const;
  std::size_t total_free_rank() const;
  friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

/// Chain complex with boundary d_k : C_k -> C_{k-1}. The matrix of d_k has
/// one column per basis element of C_k and one row per element of C_{k-1}.
struct ChainComplex {
  std::map<Grade, std::vector<VertexId>> basis;
  std::map<Grade, IntMatrix> boundary;

  std::size_t dim(Grade k) const;
  /// The stored matrix or a zero matrix of the right shape.
  IntMatrix d(Grade k) const;
  /// Throws DomainError on a shape mismatch or d_{k-1} d_k != 0.
  void validate() const;
};

/// Cochain complex with coboundary delta_k : C^k -> C^{k+1}.
struct CochainComplex {
  std::map<Grade, std::vector<VertexId>> basis;
  std::map<Grade, IntMatrix> coboundary;

  std::size_t dim(Grade k) const;
  IntMatrix delta(Grade k) const;
  void validate() const;
};

HomologyTable homology(const ChainComplex& cx, Coefficients coeff = Coefficients::integers());
HomologyTable cohomology(const CochainComplex& cx, Coefficients coeff = Coefficients::integers());

/// Graded graph plus connection satisfying the two-step condition.
class ChainGraph {
 public:
  /// Throws InputError for an invalid connection and DomainError (naming
  /// the first offending pair) if the chain condition fails.
  ChainGraph(GradedGraph graded, Connection nu);

  const GradedGraph& graded() const noexcept { return graded_; }
  const Graph& graph() const noexcept { return graded_.graph(); }
  const Connection& connection() const noexcept { return nu_; }
  Grade grade(std::size_t v) const { return graded_.grade(v); }

  ChainGraph with_gradation(Gradation g) const { return {graded_.with_gradation(std::move(g)), nu_}; }

 private:
  GradedGraph graded_;
  Connection nu_;
};

struct ChainViolation {
  std::size_t low;
  std::size_t high;
  std::int64_t sum;
};

struct ChainGraphCheck {
  bool valid = true;
  std::vector<ChainViolation> violations;
};

/// Sum over c with |c| = |a| + 1 of nu(a,c) nu(c,b), for every |b| = |a| + 2.
ChainGraphCheck is_chain_graph(const GradedGraph& gg, const Connection& nu);

/// Basis per degree in vertex order; d v = sum nu(v,w) w over |w| = |v| - 1.
ChainComplex chain_complex(const ChainGraph& cg);
/// delta v = sum nu(v,w) w over |w| = |v| + 1.
CochainComplex cochain_complex(const ChainGraph& cg);

HomologyTable homology(const ChainGraph& cg, Coefficients coeff = Coefficients::integers());
HomologyTable cohomology(const ChainGraph& cg, Coefficients coeff = Coefficients::integers());

/// Vertex-disjoint union; throws InputError if ids collide.
ChainGraph disjoint_union(const ChainGraph& a, const ChainGraph& b);

/// Chain graph induced on `vertices` (in the given order).
ChainGraph induced(const ChainGraph& cg, const std::vector<std::size_t>& vertices);

/// Vertices (g1, g2) with id "(id1,id2)" in a-major order, grades added,
/// nu((g1,g2),(g1',g2)) = nu1(g1,g1') and
/// nu((g1,g2),(g1,g2')) = (-1)^{|g1|} nu2(g2,g2').
ChainGraph product_chain_graph(const ChainGraph& a, const ChainGraph& b);

/// Block direct sum of complexes (bases concatenated per degree).
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

/// Tensor product complex with basis "(x,y)" ordered a-major within each
/// degree pair and d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);

/// Equal after reordering each degree's basis by label.
bool same_complex(const ChainComplex& a, const ChainComplex& b);

/// Künneth formula over Z: H_n(A (x) B) = sum H_i(A) (x) H_j(B) + sum Tor(H_i(A), H_{j}(B))
/// with i + j = n - 1 in the Tor part.
HomologyTable kunneth(const HomologyTable& a, const HomologyTable& b);

// ---- theorem checks ---------------------------------------------------------

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct CheckReport {
  Verdict verdict = Verdict::pass;
  std::string reference;
  std::vector<std::string> details;
};

struct TorsionDualityReport : CheckReport {
  HomologyTable homology;
  HomologyTable cohomology;
};

/// Connected deformable chain graph with rank > 0: all groups are torsion
/// and H^k = H_{k-1}. Not applicable when the hypotheses fail.
TorsionDualityReport verify_torsion_duality(const ChainGraph& cg);

struct LiftReport : CheckReport {
  std::size_t vertex = 0;
  Grade q = 0;
  std::int64_t rank = 0;
  /// Smallest divisor satisfying every relation, 0 if none.
  BigInt k = 0;
  std::vector<BigInt> candidates;
  HomologyTable before;
  HomologyTable after;
};

/// Homology before and after lifting the bottom vertex v; searches for a
/// divisor k of the rank such that H_q(before) has a cyclic subgroup of
/// order k with quotient H_q(after), H_{q+1}(after) has a subgroup
/// isomorphic to H_{q+1}(before) with cyclic quotient of order n/k, and all
/// other degrees agree.
LiftReport lift_homology_report(const ChainGraph& cg, std::size_t v);

/// True when some finite abelian group G has a subgroup isomorphic to
/// `sub` with quotient isomorphic to `quotient`, where exactly one of the
/// two is the cyclic group of order `cyclic_order`. Both `whole` and the
/// other factor must be finite.
bool is_cyclic_extension(const AbelianGroup& whole, const AbelianGroup& other,
                         const BigInt& cyclic_order);

/// prod |H_even| / prod |H_odd| for a connected deformable chain graph with
/// rank > 0. Throws DomainError if some group is infinite.
mpq_class characteristic_number_graded(const ChainGraph& cg);

/// Homology and cohomology over the field vanish in every degree. Not
/// applicable when p divides the rank or the rank is 0.
CheckReport field_vanishing_check(const ChainGraph& cg, std::uint64_t p);

/// Empirical probe of the second characteristic-number formula. Two
/// readings of the vertex count mu_k are evaluated: by grade value and by
/// valence. Nothing is asserted.
struct MuProbe {
  struct Reading {
    std::string name;
    std::optional<std::int64_t> mu;  // unset if s does not exist
    bool matches = false;
  };
  mpq_class chi_graded;
  BigInt chi_ungraded;
  std::int64_t rank = 0;
  std::vector<Reading> readings;
};

MuProbe mu_probe(const ChainGraph& cg);

}  // namespace gad
