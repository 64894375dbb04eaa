#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gad/homology.hpp"
#include "gad/lie.hpp"

namespace gad {

/// 0/1 strictly upper triangular (n+1)x(n+1) matrix. Bit type_a_index(i, j)
/// holds a_ij, so `bits` is also the vertex index of the matching monomial
/// in the exterior chain graph of type_a(n).
struct TriMatrix01 {
  std::size_t n = 0;
  std::uint64_t bits = 0;

  bool get(std::size_t i, std::size_t j) const { return bits >> type_a_index(i, j) & 1; }
  void set(std::size_t i, std::size_t j, bool v);
  friend bool operator==(const TriMatrix01&, const TriMatrix01&) = default;
};

using Weight = std::vector<std::int64_t>;

std::string to_string(const Weight& w);
/// Parses "1,1,1"; throws InputError.
Weight parse_weight(const std::string& text);

/// Number of entries above the diagonal.
std::size_t tri_size(std::size_t n);

Weight weight_of(const TriMatrix01& m);

bool is_admissible_weight(const Weight& w);
/// Admissible weights of length n+1 in lexicographic order.
std::vector<Weight> enumerate_omega(std::size_t n);

struct Factorization {
  std::vector<std::size_t> positions;
  Weight first;   // values at `positions`
  Weight second;  // remaining values, shifted down by positions.size()
};

/// Smallest qualifying position set (fewest positions, then
/// lexicographic). Nothing for a weight of length 1 or an inadmissible one.
std::optional<Factorization> is_reducible(const Weight& w);

/// All matrices of size n bucketed by weight.
class WeightAtlas {
 public:
  /// Throws InputError for n > 8.
  explicit WeightAtlas(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const LieBasis& basis() const noexcept { return basis_; }
  const std::map<Weight, std::vector<std::uint64_t>>& buckets() const noexcept { return buckets_; }
  /// Matrices of weight w (empty if none).
  const std::vector<std::uint64_t>& matrices(const Weight& w) const;

 private:
  std::size_t n_;
  LieBasis basis_;
  std::map<Weight, std::vector<std::uint64_t>> buckets_;
};

struct WeightComponent {
  Weight weight;
  std::vector<TriMatrix01> vertices;
  ChainGraph chain;
};

/// Throws InvariantViolation if the subgraph is non-empty and disconnected.
WeightComponent weight_subgraph(const WeightAtlas& atlas, const Weight& w);

std::int64_t rank_closed_form(const Weight& w);
/// Common valence of the component (0 for a single vertex).
std::int64_t counted_rank(const WeightComponent& c);

/// w with w[s] + 1 and w[t] - 1.
Weight shifted(const Weight& w, std::size_t s, std::size_t t);

struct RankDeltaReport : CheckReport {
  std::int64_t expected = 0;
  std::int64_t formula_delta = 0;
  std::int64_t counted_delta = 0;
};

/// Checks r(shifted) - r(w) = w[t] - w[s] - 1 by formula and by counting.
RankDeltaReport rank_delta_check(const WeightAtlas& atlas, const Weight& w, std::size_t s, std::size_t t);

struct EdgeWitness {
  TriMatrix01 matrix;
  bool constructive = true;
};

/// A matrix of weight w with a_st = 0 (s < t), so that adding e_st gives
/// the shifted weight. Throws InputError if s >= t or either weight is
/// inadmissible, InvariantViolation if no witness exists.
EdgeWitness edge_witness(const WeightAtlas& atlas, const Weight& w, std::size_t s, std::size_t t);

// ---- isomorphisms --------------------------------------------------------

/// g(sigma_k) for 1 <= k <= n.
TriMatrix01 apply_sigma(const TriMatrix01& a, std::size_t k);
TriMatrix01 apply_transpose(const TriMatrix01& a);
TriMatrix01 apply_rotation(const TriMatrix01& a);
TriMatrix01 apply_duality(const TriMatrix01& a);

/// Word in sigma_1..sigma_n taking the identity order to `perm`
/// (weight (i_0..i_n) goes to (i_perm(0)..i_perm(n))). Throws InputError
/// unless perm is a permutation of 0..n.
std::vector<std::size_t> transposition_word(const std::vector<std::size_t>& perm);

struct VertexMap {
  enum class Kind { permutation, transpose, rotation, duality };
  Kind kind = Kind::permutation;
  std::size_t n = 0;
  /// Applied left to right (permutation only).
  std::vector<std::size_t> word;

  TriMatrix01 operator()(const TriMatrix01& a) const;
  Weight target(const Weight& w) const;
  /// Whether the map is expected to respect the connection up to signs.
  bool signed_iso() const noexcept { return kind != Kind::permutation; }
};

std::string to_string(VertexMap::Kind k);

VertexMap iso_permutation(std::size_t n, std::vector<std::size_t> word);
VertexMap iso_transpose(std::size_t n);
VertexMap iso_rotation(std::size_t n);
VertexMap iso_duality(std::size_t n);

struct IsoReport : CheckReport {
  Weight source;
  Weight target;
  bool bijective = false;
  bool edges_preserved = false;
  /// Sign map e on the source with nu(f a, f b) = e(a) e(b) nu(a, b).
  std::optional<SignMap> gauge;
  /// Grade of f(a) as +-grade(a) + offset (signed maps only).
  int grade_direction = 1;
  std::int64_t grade_offset = 0;
};

/// Verifies the map on one weight component. A failure on a signed map is
/// reported with verdict fail; `strict` turns it into InvariantViolation.
IsoReport verify_iso(const WeightAtlas& atlas, const VertexMap& f, const Weight& w, bool strict = false);

/// Printed exponent for the duality sign.
std::int64_t duality_tau(const TriMatrix01& a);

struct ProductIsoReport : CheckReport {
  Factorization factors;
  std::size_t size = 0;
  std::size_t size_first = 0;
  std::size_t size_second = 0;
  HomologyTable homology;
  HomologyTable product_homology;
};

/// |G(w)| = |G(w1)| |G(w2)| and integral homology of G(w) equals that of
/// G(w1) x G(w2) up to a degree shift. Not applicable for irreducible w.
ProductIsoReport verify_product_iso(const WeightAtlas& atlas, const Weight& w);

/// Shifts every degree of a table by `offset`.
HomologyTable shift_degrees(const HomologyTable& h, Grade offset);

}  // namespace gad
