#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gad/connection.hpp"
#include "gad/graph.hpp"
#include "gad/matrix.hpp"

namespace gad {

/// A diagonal block of a representation matrix. A single-vertex component
/// is stored as a 1x1 zero block with `single_vertex` set; its global
/// dimension is 1 rather than 1 + 1 - 0.
struct RepBlock {
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool single_vertex = false;
  friend bool operator==(const RepBlock&, const RepBlock&) = default;
};

/// Representation matrix: entry (i, j) = nu(row_labels[i], col_labels[j]).
struct RepMatrix {
  IntMatrix entries;
  std::vector<VertexId> row_labels;
  std::vector<VertexId> col_labels;
  std::vector<RepBlock> blocks;

  /// One block covering the whole matrix; a 1x1 zero matrix is treated as
  /// a single vertex. Labels default to r0.. and c0...
  static RepMatrix from_entries(IntMatrix m);
  static RepMatrix single_vertex(const VertexId& id);

  IntMatrix block_entries(const RepBlock& b) const;
  friend bool operator==(const RepMatrix&, const RepMatrix&) = default;
};

/// Block direct sum over connected components (in component order). Rows
/// are the part of the representation gradation holding the component's
/// smallest id (or the other part if `swap_parts`); labels are sorted by id
/// within each part. Throws DomainError for an ungradable graph.
RepMatrix representation_matrix(const Graph& g, const Connection& nu, bool swap_parts = false);

/// Sum over blocks of rows + cols - 2 rank (1 for a single-vertex block).
std::size_t global_dimension(const RepMatrix& m);

RepMatrix direct_sum(const RepMatrix& a, const RepMatrix& b);

enum class ProductLayout {
  /// Rows are the even part (V1xV2 then W1xW2), columns the odd part
  /// (V1xW2 then W1xV2); the four entry families use block strides.
  corrected,
  /// The four printed index formulas read with 0-based indices. Throws
  /// InvariantViolation on an out-of-range index or a collision.
  literal,
};

/// Orthogonal product. Block direct sums distribute; a single-vertex block
/// acts as a 1x0 factor, so it is the identity for the product.
RepMatrix orthogonal_product(const RepMatrix& a, const RepMatrix& b,
                             ProductLayout layout = ProductLayout::corrected);

/// One generator of matrix equivalence. Block transposition always acts on
/// the top-left `block_rows` x `block_cols` block, which must have zero
/// off-diagonal neighbours; combine with permutations to reach other blocks.
struct MatrixMove {
  enum class Kind { permute_rows, negate_row, transpose, block_transpose };
  Kind kind = Kind::transpose;
  /// permute_rows: new row i is old row permutation[i].
  std::vector<std::size_t> permutation;
  std::size_t row = 0;
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
};

struct MatrixClassWitness {
  std::vector<MatrixMove> moves;
};

enum class BlockTransposeRule {
  /// Any diagonal block of any block-diagonal decomposition, including
  /// degenerate blocks with no rows or no columns.
  any_block,
  /// Only the displayed two-block shape: both blocks have at least one row
  /// and one column.
  two_block,
};

/// Throws DomainError if the move is not legal on `m` under `rule`.
IntMatrix apply_move(const IntMatrix& m, const MatrixMove& move,
                     BlockTransposeRule rule = BlockTransposeRule::any_block);
IntMatrix replay(const IntMatrix& m, const MatrixClassWitness& w,
                 BlockTransposeRule rule = BlockTransposeRule::any_block);

struct EquivalenceOptions {
  BlockTransposeRule rule = BlockTransposeRule::any_block;
  /// Exact search is attempted when rows + cols of each input is at most this.
  std::size_t exact_limit = 16;
  /// Backtracking nodes allowed before falling back to invariants.
  std::size_t search_budget = 2'000'000;
};

struct EquivalenceResult {
  enum class Verdict { equivalent, not_equivalent, invariants_match, invariants_differ };
  Verdict verdict = Verdict::not_equivalent;
  std::optional<MatrixClassWitness> witness;

  bool partial() const {
    return verdict == Verdict::invariants_match || verdict == Verdict::invariants_differ;
  }
  bool equivalent() const { return verdict == Verdict::equivalent; }
};

EquivalenceResult matrices_equivalent(const IntMatrix& a, const IntMatrix& b,
                                      const EquivalenceOptions& options = {});
inline EquivalenceResult matrices_equivalent(const RepMatrix& a, const RepMatrix& b,
                                             const EquivalenceOptions& options = {}) {
  return matrices_equivalent(a.entries, b.entries, options);
}

/// Witness built from matching labels rather than search: rows and columns
/// are paired by label (after a transpose if needed) and signs are solved
/// along a spanning tree. Returns nullopt if labels or entries do not line up.
std::optional<MatrixClassWitness> label_witness(const RepMatrix& a, const RepMatrix& b);

/// 0 for a single vertex, otherwise the size of one distance component.
/// Requires a connected graph; throws InvariantViolation if the two
/// components differ in size.
std::size_t volume(const Graph& g, const Connection& nu);

/// |det| of the representation matrix; 1 for a single vertex.
BigInt characteristic_number(const Graph& g, const Connection& nu);

}  // namespace gad
