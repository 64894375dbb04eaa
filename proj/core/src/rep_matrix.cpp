#include "gad/rep_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gad/errors.hpp"

namespace gad {

namespace {

std::vector<VertexId> default_labels(const char* prefix, std::size_t n) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

bool is_single_zero(const IntMatrix& m) { return m.rows() == 1 && m.cols() == 1 && m(0, 0) == 0; }

// A block as seen by the product: a single vertex has one row and no columns.
struct Factor {
  IntMatrix entries;
  std::vector<VertexId> rows;
  std::vector<VertexId> cols;
};

Factor factor_of(const RepMatrix& m, const RepBlock& b) {
  Factor f;
  f.rows.assign(m.row_labels.begin() + b.row0, m.row_labels.begin() + b.row0 + b.rows);
  if (b.single_vertex) {
    f.entries = IntMatrix(1, 0);
    return f;
  }
  f.cols.assign(m.col_labels.begin() + b.col0, m.col_labels.begin() + b.col0 + b.cols);
  f.entries = m.block_entries(b);
  return f;
}

std::string pair_label(const VertexId& a, const VertexId& b) { return "(" + a + "," + b + ")"; }

RepMatrix block_product_corrected(const Factor& a, const Factor& b) {
  const std::size_t m1 = a.rows.size(), n1 = a.cols.size();
  const std::size_t m2 = b.rows.size(), n2 = b.cols.size();
  RepMatrix out;
  out.entries = IntMatrix(m1 * m2 + n1 * n2, m1 * n2 + n1 * m2);
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t k = 0; k < m2; ++k) out.row_labels.push_back(pair_label(a.rows[i], b.rows[k]));
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t k = 0; k < n2; ++k) out.row_labels.push_back(pair_label(a.cols[j], b.cols[k]));
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t k = 0; k < n2; ++k) out.col_labels.push_back(pair_label(a.rows[i], b.cols[k]));
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t k = 0; k < m2; ++k) out.col_labels.push_back(pair_label(a.cols[j], b.rows[k]));

  auto& c = out.entries;
  const std::size_t even2 = m1 * m2, odd2 = m1 * n2;
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const auto v = a.entries(i, j);
      if (v == 0) continue;
      for (std::size_t k = 0; k < m2; ++k) c(i * m2 + k, odd2 + j * m2 + k) = v;
      for (std::size_t k = 0; k < n2; ++k) c(even2 + j * n2 + k, i * n2 + k) = v;
    }
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const auto v = b.entries(i, j);
      if (v == 0) continue;
      for (std::size_t k = 0; k < m1; ++k) c(k * m2 + i, k * n2 + j) = v;
      for (std::size_t k = 0; k < n1; ++k) c(even2 + k * n2 + j, odd2 + k * m2 + i) = -v;
    }
  if (out.entries.rows() == 1 && out.entries.cols() == 0) {
    out.entries = IntMatrix(1, 1);
    out.col_labels = {""};
    out.blocks = {RepBlock{0, 0, 1, 1, true}};
    return out;
  }
  out.blocks = {RepBlock{0, 0, out.entries.rows(), out.entries.cols(), false}};
  return out;
}

RepMatrix block_product_literal(const Factor& a, const Factor& b) {
  const std::size_t m1 = a.rows.size(), n1 = a.cols.size();
  const std::size_t m2 = b.rows.size(), n2 = b.cols.size();
  const std::size_t rows = m1 * m2 + n1 * n2, cols = m1 * n2 + n1 * m2;
  IntMatrix c(rows, cols);
  std::vector<char> written(rows * cols, 0);
  auto put = [&](int family, std::size_t s, std::size_t t, std::int64_t v) {
    if (s >= rows || t >= cols) {
      std::ostringstream os;
      os << "orthogonal product formula (" << family << ") writes (" << s << "," << t
         << ") outside a " << rows << "x" << cols << " matrix";
      throw InvariantViolation("orthogonal_product", os.str());
    }
    if (written[s * cols + t] && c(s, t) != v) {
      std::ostringstream os;
      os << "orthogonal product formula (" << family << ") collides at (" << s << "," << t
         << "): " << c(s, t) << " vs " << v;
      throw InvariantViolation("orthogonal_product", os.str());
    }
    written[s * cols + t] = 1;
    c(s, t) = v;
  };
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t k = 0; k < n2; ++k) put(1, i * n2 + k, j * n2 + k, a.entries(i, j));
      for (std::size_t k = 0; k < m2; ++k)
        put(2, m1 * n2 + j * m2 + k, n1 * n2 + i * m2 + k, a.entries(i, j));
    }
  for (std::size_t i = 0; i < m2; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      for (std::size_t k = 0; k < n1; ++k) put(3, m1 * n2 + k * m2 + i, k * n2 + j, b.entries(i, j));
      for (std::size_t k = 0; k < m1; ++k)
        put(4, k * n2 + j, n1 * n2 + k * m2 + i, -b.entries(i, j));
    }
  RepMatrix out = RepMatrix::from_entries(std::move(c));
  return out;
}

// ---- equivalence -----------------------------------------------------------

// Rows are nodes [0, m), columns are nodes [m, m + n).
struct Bipartite {
  const IntMatrix* a;
  std::size_t m, n;
  std::size_t size() const { return m + n; }
  bool is_row(std::size_t v) const { return v < m; }
  std::int64_t weight(std::size_t u, std::size_t v) const {
    if (is_row(u) == is_row(v)) return 0;
    return is_row(u) ? (*a)(u, v - m) : (*a)(v, u - m);
  }
  std::vector<std::size_t> neighbors(std::size_t u) const {
    std::vector<std::size_t> out;
    if (is_row(u)) {
      for (std::size_t j = 0; j < n; ++j)
        if ((*a)(u, j) != 0) out.push_back(m + j);
    } else {
      for (std::size_t i = 0; i < m; ++i)
        if ((*a)(i, u - m) != 0) out.push_back(i);
    }
    return out;
  }
};

struct Component {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

struct Decomposition {
  std::vector<Component> components;  // nonzero connected parts
  std::vector<std::size_t> zero_rows;
  std::vector<std::size_t> zero_cols;
};

Decomposition decompose(const IntMatrix& a) {
  Bipartite g{&a, a.rows(), a.cols()};
  Decomposition d;
  std::vector<char> seen(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    const auto first = g.neighbors(s);
    if (first.empty()) {
      (g.is_row(s) ? d.zero_rows : d.zero_cols).push_back(g.is_row(s) ? s : s - g.m);
      continue;
    }
    Component c;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (g.is_row(u)) c.rows.push_back(u);
      else c.cols.push_back(u - g.m);
      for (std::size_t v : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    }
    std::sort(c.rows.begin(), c.rows.end());
    std::sort(c.cols.begin(), c.cols.end());
    d.components.push_back(std::move(c));
  }
  return d;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

// b(row_map[i], col_map[j]) = row_sign[i] col_sign[j] a(i, j).
struct SignedIso {
  std::vector<std::size_t> row_map, col_map;
  std::vector<int> row_sign, col_sign;
};

enum class SearchStatus { found, absent, exhausted };

// Colour refinement on the absolute-value weighted bipartite graphs of a and
// b jointly, so colours are comparable across the two.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const Bipartite& ga,
                                                                             const Bipartite& gb) {
  std::vector<std::size_t> ca(ga.size()), cb(gb.size());
  for (std::size_t v = 0; v < ga.size(); ++v) ca[v] = ga.is_row(v) ? 0 : 1;
  for (std::size_t v = 0; v < gb.size(); ++v) cb[v] = gb.is_row(v) ? 0 : 1;
  for (int round = 0; round < 6; ++round) {
    using Sig = std::pair<std::size_t, std::vector<std::pair<std::int64_t, std::size_t>>>;
    std::map<Sig, std::size_t> ids;
    auto signature = [](const Bipartite& g, const std::vector<std::size_t>& col, std::size_t v) {
      Sig s{col[v], {}};
      for (std::size_t w : g.neighbors(v)) s.second.emplace_back(std::llabs(g.weight(v, w)), col[w]);
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    std::vector<Sig> sa, sb;
    for (std::size_t v = 0; v < ga.size(); ++v) sa.push_back(signature(ga, ca, v));
    for (std::size_t v = 0; v < gb.size(); ++v) sb.push_back(signature(gb, cb, v));
    for (const auto& s : sa) ids.emplace(s, 0);
    for (const auto& s : sb) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<std::size_t> na(ga.size()), nb(gb.size());
    for (std::size_t v = 0; v < ga.size(); ++v) na[v] = ids.at(sa[v]);
    for (std::size_t v = 0; v < gb.size(); ++v) nb[v] = ids.at(sb[v]);
    const bool stable = std::set<std::size_t>(na.begin(), na.end()).size() ==
                            std::set<std::size_t>(ca.begin(), ca.end()).size() &&
                        std::set<std::size_t>(nb.begin(), nb.end()).size() ==
                            std::set<std::size_t>(cb.begin(), cb.end()).size();
    ca = std::move(na);
    cb = std::move(nb);
    if (stable && round > 0) break;
  }
  return {ca, cb};
}

SearchStatus find_signed_isomorphism(const IntMatrix& a, const IntMatrix& b, std::size_t& budget,
                                     SignedIso& out) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return SearchStatus::absent;
  Bipartite ga{&a, a.rows(), a.cols()}, gb{&b, b.rows(), b.cols()};
  const auto [ca, cb] = refine_colours(ga, gb);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return SearchStatus::absent;
  }

  // Breadth-first order over a so that each node after a component's first
  // has an already-placed neighbour fixing its sign.
  std::vector<std::size_t> order;
  std::vector<char> seen(ga.size(), 0);
  for (std::size_t s = 0; s < ga.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (std::size_t v : ga.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    }
  }

  const std::size_t total = ga.size();
  std::vector<std::ptrdiff_t> image(total, -1);
  std::vector<int> sign(total, 0);
  std::vector<char> used(total, 0);
  std::vector<std::size_t> placed;
  bool exhausted = false;

  std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
    if (pos == total) return true;
    const std::size_t u = order[pos];
    for (std::size_t y = 0; y < total; ++y) {
      if (used[y] || ga.is_row(u) != gb.is_row(y) || ca[u] != cb[y]) continue;
      if (budget == 0) {
        exhausted = true;
        return false;
      }
      --budget;
      int s = 0;
      bool ok = true;
      for (std::size_t w : placed) {
        if (ga.is_row(w) == ga.is_row(u)) continue;
        const std::int64_t wa = ga.weight(u, w);
        const std::int64_t wb = gb.weight(y, static_cast<std::size_t>(image[w]));
        if (wa == 0 || wb == 0) {
          if (wa != wb) ok = false;
        } else {
          const std::int64_t base = wa * sign[w];
          const int need = wb == base ? 1 : (wb == -base ? -1 : 0);
          if (need == 0 || (s != 0 && need != s)) ok = false;
          s = need;
        }
        if (!ok) break;
      }
      if (!ok) continue;
      if (s == 0) s = 1;
      image[u] = static_cast<std::ptrdiff_t>(y);
      sign[u] = s;
      used[y] = 1;
      placed.push_back(u);
      if (place(pos + 1)) return true;
      placed.pop_back();
      used[y] = 0;
      image[u] = -1;
      if (exhausted) return false;
    }
    return false;
  };

  if (!place(0)) return exhausted ? SearchStatus::exhausted : SearchStatus::absent;
  out.row_map.resize(a.rows());
  out.row_sign.resize(a.rows());
  out.col_map.resize(a.cols());
  out.col_sign.resize(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out.row_map[i] = static_cast<std::size_t>(image[i]);
    out.row_sign[i] = sign[i];
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    out.col_map[j] = static_cast<std::size_t>(image[a.rows() + j]) - b.rows();
    out.col_sign[j] = sign[a.rows() + j];
  }
  return SearchStatus::found;
}

// Where a current row or column came from in the original matrix.
struct Origin {
  bool was_row;
  std::size_t index;
  friend bool operator==(const Origin&, const Origin&) = default;
};

// Applies moves while recording them and tracking provenance.
class Builder {
 public:
  Builder(IntMatrix start, BlockTransposeRule rule) : cur_(std::move(start)), rule_(rule) {
    for (std::size_t i = 0; i < cur_.rows(); ++i) row_origin_.push_back({true, i});
    for (std::size_t j = 0; j < cur_.cols(); ++j) col_origin_.push_back({false, j});
  }

  const IntMatrix& current() const { return cur_; }
  MatrixClassWitness take() { return std::move(w_); }

  void permute_rows(std::vector<std::size_t> perm) {
    bool identity = true;
    for (std::size_t i = 0; i < perm.size(); ++i) identity = identity && perm[i] == i;
    if (identity) return;
    std::vector<Origin> o;
    for (std::size_t i : perm) o.push_back(row_origin_[i]);
    row_origin_ = std::move(o);
    MatrixMove mv;
    mv.kind = MatrixMove::Kind::permute_rows;
    mv.permutation = std::move(perm);
    apply(std::move(mv));
  }
  void permute_cols(std::vector<std::size_t> perm) {
    transpose();
    permute_rows(std::move(perm));
    transpose();
  }
  void negate_row(std::size_t i) {
    MatrixMove mv;
    mv.kind = MatrixMove::Kind::negate_row;
    mv.row = i;
    apply(std::move(mv));
  }
  void negate_col(std::size_t j) {
    transpose();
    negate_row(j);
    transpose();
  }
  void transpose() {
    std::swap(row_origin_, col_origin_);
    apply(MatrixMove{});
  }
  // Brings rows R and columns C to the top-left (in the given order) and
  // transposes that block.
  void transpose_block(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
    permute_rows(front_permutation(r, cur_.rows()));
    permute_cols(front_permutation(c, cur_.cols()));
    const std::size_t p = r.size(), q = c.size();
    std::vector<Origin> rows(col_origin_.begin(), col_origin_.begin() + q);
    rows.insert(rows.end(), row_origin_.begin() + p, row_origin_.end());
    std::vector<Origin> cols(row_origin_.begin(), row_origin_.begin() + p);
    cols.insert(cols.end(), col_origin_.begin() + q, col_origin_.end());
    row_origin_ = std::move(rows);
    col_origin_ = std::move(cols);
    MatrixMove mv;
    mv.kind = MatrixMove::Kind::block_transpose;
    mv.block_rows = p;
    mv.block_cols = q;
    apply(std::move(mv));
  }

  // Current rows and columns whose origin lies in the given original sets.
  Component locate(const Component& original) const {
    auto in = [&](const Origin& o) {
      const auto& v = o.was_row ? original.rows : original.cols;
      return std::binary_search(v.begin(), v.end(), o.index);
    };
    Component out;
    for (std::size_t i = 0; i < row_origin_.size(); ++i)
      if (in(row_origin_[i])) out.rows.push_back(i);
    for (std::size_t j = 0; j < col_origin_.size(); ++j)
      if (in(col_origin_[j])) out.cols.push_back(j);
    return out;
  }

 private:
  static std::vector<std::size_t> front_permutation(const std::vector<std::size_t>& front,
                                                    std::size_t n) {
    std::vector<std::size_t> perm = front;
    std::vector<char> taken(n, 0);
    for (std::size_t i : front) taken[i] = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i]) perm.push_back(i);
    return perm;
  }

  void apply(MatrixMove mv) {
    cur_ = apply_move(cur_, mv, rule_);
    w_.moves.push_back(std::move(mv));
  }

  IntMatrix cur_;
  BlockTransposeRule rule_;
  MatrixClassWitness w_;
  std::vector<Origin> row_origin_, col_origin_;
};

struct Pairing {
  std::size_t b_component;
  bool transposed;
};

// Row and column squared norms as one multiset, plus shape and rank.
bool invariants_agree(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() + a.cols() != b.rows() + b.cols()) return false;
  auto norms = [](const IntMatrix& m) {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
      out.push_back(s);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
      out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (norms(a) != norms(b)) return false;
  return rank_q(a) == rank_q(b);
}

}  // namespace

// ---- RepMatrix ---------------------------------------------------------------

RepMatrix RepMatrix::from_entries(IntMatrix m) {
  RepMatrix out;
  out.row_labels = default_labels("r", m.rows());
  out.col_labels = default_labels("c", m.cols());
  const bool single = is_single_zero(m);
  if (m.rows() + m.cols() > 0) out.blocks = {RepBlock{0, 0, m.rows(), m.cols(), single}};
  out.entries = std::move(m);
  return out;
}

RepMatrix RepMatrix::single_vertex(const VertexId& id) {
  RepMatrix out;
  out.entries = IntMatrix(1, 1);
  out.row_labels = {id};
  out.col_labels = {""};
  out.blocks = {RepBlock{0, 0, 1, 1, true}};
  return out;
}

IntMatrix RepMatrix::block_entries(const RepBlock& b) const {
  IntMatrix out(b.rows, b.cols);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) out(i, j) = entries(b.row0 + i, b.col0 + j);
  return out;
}

RepMatrix representation_matrix(const Graph& g, const Connection& nu, bool swap_parts) {
  const auto parts = is_gradable(g);
  if (!parts) throw DomainError("representation_matrix: graph is not gradable");
  RepMatrix out;
  auto by_id = [&](std::size_t x, std::size_t y) { return g.id(x) < g.id(y); };
  for (const auto& dd : *parts) {
    if (dd.part1.size() + dd.part2.size() == 1) {
      out = direct_sum(out, RepMatrix::single_vertex(g.id(dd.part1.front())));
      continue;
    }
    auto rows = swap_parts ? dd.part2 : dd.part1;
    auto cols = swap_parts ? dd.part1 : dd.part2;
    std::sort(rows.begin(), rows.end(), by_id);
    std::sort(cols.begin(), cols.end(), by_id);
    RepMatrix block;
    block.entries = IntMatrix(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      block.row_labels.push_back(g.id(rows[i]));
      for (std::size_t j = 0; j < cols.size(); ++j) block.entries(i, j) = nu(rows[i], cols[j]);
    }
    for (std::size_t c : cols) block.col_labels.push_back(g.id(c));
    block.blocks = {RepBlock{0, 0, rows.size(), cols.size(), false}};
    out = direct_sum(out, block);
  }
  return out;
}

std::size_t global_dimension(const RepMatrix& m) {
  std::size_t d = 0;
  for (const auto& b : m.blocks) {
    if (b.single_vertex) {
      d += 1;
      continue;
    }
    d += b.rows + b.cols - 2 * rank_q(m.block_entries(b));
  }
  return d;
}

RepMatrix direct_sum(const RepMatrix& a, const RepMatrix& b) {
  RepMatrix out;
  out.entries = IntMatrix(a.entries.rows() + b.entries.rows(), a.entries.cols() + b.entries.cols());
  for (std::size_t i = 0; i < a.entries.rows(); ++i)
    for (std::size_t j = 0; j < a.entries.cols(); ++j) out.entries(i, j) = a.entries(i, j);
  for (std::size_t i = 0; i < b.entries.rows(); ++i)
    for (std::size_t j = 0; j < b.entries.cols(); ++j)
      out.entries(a.entries.rows() + i, a.entries.cols() + j) = b.entries(i, j);
  out.row_labels = a.row_labels;
  out.row_labels.insert(out.row_labels.end(), b.row_labels.begin(), b.row_labels.end());
  out.col_labels = a.col_labels;
  out.col_labels.insert(out.col_labels.end(), b.col_labels.begin(), b.col_labels.end());
  out.blocks = a.blocks;
  for (auto blk : b.blocks) {
    blk.row0 += a.entries.rows();
    blk.col0 += a.entries.cols();
    out.blocks.push_back(blk);
  }
  return out;
}

RepMatrix orthogonal_product(const RepMatrix& a, const RepMatrix& b, ProductLayout layout) {
  RepMatrix out;
  for (const auto& ba : a.blocks)
    for (const auto& bb : b.blocks) {
      const Factor fa = factor_of(a, ba), fb = factor_of(b, bb);
      out = direct_sum(out, layout == ProductLayout::corrected ? block_product_corrected(fa, fb)
                                                               : block_product_literal(fa, fb));
    }
  return out;
}

IntMatrix apply_move(const IntMatrix& m, const MatrixMove& move, BlockTransposeRule rule) {
  switch (move.kind) {
    case MatrixMove::Kind::permute_rows: {
      const auto& p = move.permutation;
      if (p.size() != m.rows()) throw DomainError("permute_rows: permutation has wrong length");
      std::vector<char> seen(p.size(), 0);
      IntMatrix out(m.rows(), m.cols());
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] >= p.size() || seen[p[i]]) throw DomainError("permute_rows: not a permutation");
        seen[p[i]] = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(p[i], j);
      }
      return out;
    }
    case MatrixMove::Kind::negate_row: {
      if (move.row >= m.rows()) throw DomainError("negate_row: row out of range");
      IntMatrix out = m;
      for (std::size_t j = 0; j < m.cols(); ++j) out(move.row, j) = -out(move.row, j);
      return out;
    }
    case MatrixMove::Kind::transpose:
      return m.transposed();
    case MatrixMove::Kind::block_transpose: {
      const std::size_t p = move.block_rows, q = move.block_cols;
      if (p > m.rows() || q > m.cols()) throw DomainError("block_transpose: block exceeds matrix");
      if (rule == BlockTransposeRule::two_block &&
          (p == 0 || q == 0 || p == m.rows() || q == m.cols()))
        throw DomainError("block_transpose: both blocks must be nonempty under the two-block rule");
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if ((i < p) != (j < q) && m(i, j) != 0)
            throw DomainError("block_transpose: matrix is not block diagonal at that split");
      const std::size_t rest_r = m.rows() - p, rest_c = m.cols() - q;
      IntMatrix out(q + rest_r, p + rest_c);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) out(j, i) = m(i, j);
      for (std::size_t i = 0; i < rest_r; ++i)
        for (std::size_t j = 0; j < rest_c; ++j) out(q + i, p + j) = m(p + i, q + j);
      return out;
    }
  }
  throw DomainError("apply_move: unknown move");
}

IntMatrix replay(const IntMatrix& m, const MatrixClassWitness& w, BlockTransposeRule rule) {
  IntMatrix cur = m;
  for (const auto& mv : w.moves) cur = apply_move(cur, mv, rule);
  return cur;
}

EquivalenceResult matrices_equivalent(const IntMatrix& a, const IntMatrix& b,
                                      const EquivalenceOptions& options) {
  using V = EquivalenceResult::Verdict;
  auto partial = [&] {
    EquivalenceResult r;
    r.verdict = invariants_agree(a, b) ? V::invariants_match : V::invariants_differ;
    return r;
  };
  auto no = [] { return EquivalenceResult{V::not_equivalent, std::nullopt}; };

  if (a.rows() + a.cols() != b.rows() + b.cols()) return no();
  if (a.rows() + a.cols() > options.exact_limit) return partial();

  const bool strict = options.rule == BlockTransposeRule::two_block;
  const Decomposition da = decompose(a), db = decompose(b);
  const std::size_t k = da.components.size();
  if (k != db.components.size()) return no();
  const std::size_t zra = da.zero_rows.size(), zca = da.zero_cols.size();
  const std::size_t zrb = db.zero_rows.size(), zcb = db.zero_cols.size();
  if (zra + zca != zrb + zcb) return no();

  // Under the two-block rule a lone component with zeros on only one side
  // can only be moved by a full transpose, which also swaps the zero counts.
  const bool locked = strict && k == 1 && (zra == 0 || zca == 0);
  if (strict && k == 1 && !locked && (zrb == 0 || zcb == 0)) return no();
  if (strict && k == 0) {
    const bool a_free = a.rows() >= 2 && a.cols() >= 2;
    const bool b_free = b.rows() >= 2 && b.cols() >= 2;
    const bool same = a.rows() == b.rows() || a.rows() == b.cols();
    if (!(a_free && b_free) && !same) return no();
  }

  std::size_t budget = options.search_budget;
  std::vector<Pairing> pairing(k);
  std::vector<char> taken(k, 0);
  for (std::size_t ia = 0; ia < k; ++ia) {
    const auto& c = da.components[ia];
    const IntMatrix ma = submatrix(a, c.rows, c.cols);
    const IntMatrix mt = ma.transposed();
    bool matched = false;
    for (std::size_t ib = 0; ib < k && !matched; ++ib) {
      if (taken[ib]) continue;
      const auto& cb = db.components[ib];
      const IntMatrix mb = submatrix(b, cb.rows, cb.cols);
      for (bool tr : {false, true}) {
        if (locked) {
          const bool counts_direct = zra == zrb && zca == zcb;
          const bool counts_swapped = zra == zcb && zca == zrb;
          if ((!tr && !counts_direct) || (tr && !counts_swapped)) continue;
        }
        SignedIso iso;
        const auto st = find_signed_isomorphism(tr ? mt : ma, mb, budget, iso);
        if (st == SearchStatus::exhausted) return partial();
        if (st == SearchStatus::found) {
          pairing[ia] = {ib, tr};
          taken[ib] = 1;
          matched = true;
          break;
        }
      }
    }
    if (!matched) return no();
  }

  // Build the witness.
  Builder bld(a, options.rule);
  if (locked) {
    if (k == 1 && pairing[0].transposed) bld.transpose();
  } else {
    for (std::size_t ia = 0; ia < k; ++ia) {
      if (!pairing[ia].transposed) continue;
      const Component here = bld.locate(da.components[ia]);
      bld.transpose_block(here.rows, here.cols);
    }
  }

  // Trade zero rows against zero columns.
  auto zeros = [&] { return decompose(bld.current()); };
  auto trade = [&](bool row_to_col) {
    const Decomposition d = zeros();
    if (!strict) {
      if (row_to_col) bld.transpose_block({d.zero_rows.front()}, {});
      else bld.transpose_block({}, {d.zero_cols.front()});
      return;
    }
    if (k >= 2) {
      // Carry the zero line across with the first component, then turn the
      // component back.
      const Component c = bld.locate(da.components[0]);
      auto rows = c.rows, cols = c.cols;
      if (row_to_col) rows.push_back(d.zero_rows.front());
      else cols.push_back(d.zero_cols.front());
      bld.transpose_block(rows, cols);
      const Component back = bld.locate(da.components[0]);
      bld.transpose_block(back.rows, back.cols);
      return;
    }
    // One component with zeros on both sides, or no component at all:
    // trade two zero lines of one kind against one of the other.
    if (row_to_col) bld.transpose_block({d.zero_rows[0], d.zero_rows[1]}, {d.zero_cols[0]});
    else bld.transpose_block({d.zero_rows[0]}, {d.zero_cols[0], d.zero_cols[1]});
  };

  if (strict && k == 0) {
    const bool free = a.rows() >= 2 && a.cols() >= 2;
    if (!free || b.rows() < 2 || b.cols() < 2) {
      if (a.rows() != b.rows()) bld.transpose();
    } else {
      while (bld.current().rows() > b.rows()) trade(true);
      while (bld.current().rows() < b.rows()) trade(false);
    }
  } else if (!locked) {
    while (zeros().zero_rows.size() > zrb) trade(true);
    while (zeros().zero_rows.size() < zrb) trade(false);
  }

  // Signed permutation onto b.
  const IntMatrix& cur = bld.current();
  const Decomposition dc = zeros();
  if (dc.zero_rows.size() != zrb || dc.zero_cols.size() != zcb || cur.rows() != b.rows())
    throw InvariantViolation("matrices_equivalent", "witness construction left mismatched zero lines");
  std::vector<std::size_t> row_target(cur.rows()), col_target(cur.cols());
  std::vector<int> row_sign(cur.rows(), 1), col_sign(cur.cols(), 1);
  for (std::size_t t = 0; t < zrb; ++t) row_target[dc.zero_rows[t]] = db.zero_rows[t];
  for (std::size_t t = 0; t < zcb; ++t) col_target[dc.zero_cols[t]] = db.zero_cols[t];
  for (std::size_t ia = 0; ia < k; ++ia) {
    const Component here = bld.locate(da.components[ia]);
    const auto& cb = db.components[pairing[ia].b_component];
    SignedIso iso;
    std::size_t big = options.search_budget;
    if (find_signed_isomorphism(submatrix(cur, here.rows, here.cols), submatrix(b, cb.rows, cb.cols),
                                big, iso) != SearchStatus::found)
      throw InvariantViolation("matrices_equivalent", "component lost its match during witness construction");
    for (std::size_t i = 0; i < here.rows.size(); ++i) {
      row_target[here.rows[i]] = cb.rows[iso.row_map[i]];
      row_sign[here.rows[i]] = iso.row_sign[i];
    }
    for (std::size_t j = 0; j < here.cols.size(); ++j) {
      col_target[here.cols[j]] = cb.cols[iso.col_map[j]];
      col_sign[here.cols[j]] = iso.col_sign[j];
    }
  }
  for (std::size_t i = 0; i < row_sign.size(); ++i)
    if (row_sign[i] < 0) bld.negate_row(i);
  for (std::size_t j = 0; j < col_sign.size(); ++j)
    if (col_sign[j] < 0) bld.negate_col(j);
  std::vector<std::size_t> rp(row_target.size()), cp(col_target.size());
  for (std::size_t i = 0; i < row_target.size(); ++i) rp[row_target[i]] = i;
  for (std::size_t j = 0; j < col_target.size(); ++j) cp[col_target[j]] = j;
  bld.permute_rows(rp);
  bld.permute_cols(cp);
  if (!(bld.current() == b))
    throw InvariantViolation("matrices_equivalent", "witness does not reproduce the target");
  return EquivalenceResult{V::equivalent, bld.take()};
}

std::optional<MatrixClassWitness> label_witness(const RepMatrix& a, const RepMatrix& b) {
  const IntMatrix& ma = a.entries;
  const IntMatrix& mb = b.entries;
  std::map<VertexId, std::size_t> brow, bcol;
  for (std::size_t i = 0; i < b.row_labels.size(); ++i) brow[b.row_labels[i]] = i;
  for (std::size_t j = 0; j < b.col_labels.size(); ++j) bcol[b.col_labels[j]] = j;
  auto lookup = [](const std::map<VertexId, std::size_t>& m, const VertexId& k) -> std::ptrdiff_t {
    auto it = m.find(k);
    return it == m.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  };
  if (a.row_labels.size() != ma.rows() || a.col_labels.size() != ma.cols()) return std::nullopt;

  // Orientation per block, judged by its first row label.
  std::vector<const RepBlock*> flip;
  std::size_t oriented = 0;
  for (const auto& blk : a.blocks) {
    if (blk.single_vertex || blk.rows == 0) continue;
    ++oriented;
    const VertexId& first = a.row_labels[blk.row0];
    if (lookup(brow, first) >= 0) continue;
    if (lookup(bcol, first) < 0) return std::nullopt;
    flip.push_back(&blk);
  }
  Builder bld(ma, BlockTransposeRule::any_block);
  std::vector<VertexId> rl = a.row_labels, cl = a.col_labels;
  if (!flip.empty() && flip.size() == oriented) {
    bld.transpose();
    std::swap(rl, cl);
  } else {
    auto position = [](const std::vector<VertexId>& labels, const VertexId& l) {
      return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
    };
    auto to_front = [](const std::vector<VertexId>& labels, const std::vector<std::size_t>& idx) {
      std::vector<VertexId> out;
      std::vector<char> taken(labels.size(), 0);
      for (std::size_t i : idx) {
        out.push_back(labels[i]);
        taken[i] = 1;
      }
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (!taken[i]) out.push_back(labels[i]);
      return out;
    };
    for (const RepBlock* blk : flip) {
      std::vector<std::size_t> r, c;
      for (std::size_t k = 0; k < blk->rows; ++k) r.push_back(position(rl, a.row_labels[blk->row0 + k]));
      for (std::size_t k = 0; k < blk->cols; ++k) c.push_back(position(cl, a.col_labels[blk->col0 + k]));
      bld.transpose_block(r, c);
      const auto rf = to_front(rl, r), cf = to_front(cl, c);
      rl.assign(cf.begin(), cf.begin() + static_cast<std::ptrdiff_t>(c.size()));
      rl.insert(rl.end(), rf.begin() + static_cast<std::ptrdiff_t>(r.size()), rf.end());
      cl.assign(rf.begin(), rf.begin() + static_cast<std::ptrdiff_t>(r.size()));
      cl.insert(cl.end(), cf.begin() + static_cast<std::ptrdiff_t>(c.size()), cf.end());
    }
  }
  const IntMatrix cur = bld.current();
  if (cur.rows() != mb.rows() || cur.cols() != mb.cols()) return std::nullopt;

  // Labels pair up directly; whatever is left over must be zero lines
  // (single-vertex blocks), which pair up in order.
  auto pair_lines = [&](const std::vector<VertexId>& labels, const std::map<VertexId, std::size_t>& index,
                        std::size_t count, auto zero_cur, auto zero_b) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> to(count, count);
    std::vector<char> used(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      const auto t = labels[i].empty() ? -1 : lookup(index, labels[i]);
      if (t >= 0 && !used[static_cast<std::size_t>(t)]) {
        to[i] = static_cast<std::size_t>(t);
        used[to[i]] = 1;
      }
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (to[i] != count) continue;
      if (!zero_cur(i)) return std::nullopt;
      while (next < count && (used[next] || !zero_b(next))) ++next;
      if (next == count) return std::nullopt;
      to[i] = next;
      used[next] = 1;
    }
    return to;
  };
  auto zero_row = [](const IntMatrix& m) {
    return [&m](std::size_t i) {
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) return false;
      return true;
    };
  };
  auto zero_col = [](const IntMatrix& m) {
    return [&m](std::size_t j) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, j) != 0) return false;
      return true;
    };
  };
  const auto rows_to = pair_lines(rl, brow, cur.rows(), zero_row(cur), zero_row(mb));
  const auto cols_to = pair_lines(cl, bcol, cur.cols(), zero_col(cur), zero_col(mb));
  if (!rows_to || !cols_to) return std::nullopt;
  const std::vector<std::size_t>& rt = *rows_to;
  const std::vector<std::size_t>& ct = *cols_to;
  // Solve b(rt i, ct j) = s_i t_j cur(i, j) along a spanning forest.
  Bipartite g{&cur, cur.rows(), cur.cols()};
  std::vector<int> sign(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (sign[s] != 0) continue;
    sign[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : g.neighbors(u)) {
        if (sign[v] != 0) continue;
        const std::size_t i = g.is_row(u) ? u : v, j = (g.is_row(u) ? v : u) - g.m;
        const std::int64_t x = cur(i, j), y = mb(rt[i], ct[j]);
        if (y != x && y != -x) return std::nullopt;
        sign[v] = (y == x ? 1 : -1) * sign[u];
        queue.push_back(v);
      }
    }
  }
  for (std::size_t i = 0; i < cur.rows(); ++i)
    if (sign[i] < 0) bld.negate_row(i);
  for (std::size_t j = 0; j < cur.cols(); ++j)
    if (sign[g.m + j] < 0) bld.negate_col(j);
  std::vector<std::size_t> rp(rt.size()), cp(ct.size());
  for (std::size_t i = 0; i < rt.size(); ++i) rp[rt[i]] = i;
  for (std::size_t j = 0; j < ct.size(); ++j) cp[ct[j]] = j;
  bld.permute_rows(rp);
  bld.permute_cols(cp);
  if (!(bld.current() == mb)) return std::nullopt;
  return bld.take();
}

std::size_t volume(const Graph& g, const Connection& nu) {
  (void)nu;
  if (!g.connected()) throw InputError("volume: graph must be connected");
  if (g.size() <= 1) return 0;
  const auto parts = is_gradable(g);
  if (!parts) throw DomainError("volume: graph is not gradable");
  const auto& dd = parts->front();
  if (dd.part1.size() != dd.part2.size())
    throw InvariantViolation("balanced distance components", "distance components differ in size (" +
                                             std::to_string(dd.part1.size()) + " vs " +
                                             std::to_string(dd.part2.size()) + ")");
  return dd.part1.size();
}

BigInt characteristic_number(const Graph& g, const Connection& nu) {
  if (!g.connected()) throw InputError("characteristic_number: graph must be connected");
  if (g.size() <= 1) return 1;
  const RepMatrix m = representation_matrix(g, nu);
  if (m.entries.rows() != m.entries.cols())
    throw InvariantViolation("square representation matrix", "representation matrix is not square");
  return abs(determinant(m.entries));
}

}  // namespace gad
