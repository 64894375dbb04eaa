#include "gad/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace gad {

namespace {

// Thrown by the direct reducer once an entry outgrows the limit.
struct EntryGrowth {};

class Reducer {
 public:
  Reducer(BigMatrix a, bool track, std::size_t max_bits = 0) : a_(std::move(a)), track_(track), max_bits_(max_bits) {
    if (track_) {
      u_ = BigMatrix::identity(a_.rows());
      v_ = BigMatrix::identity(a_.cols());
    }
  }

  SmithForm run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < limit; ++t) {
      if (!place_pivot(t)) break;
      for (;;) {
        clear_cross(t);
        // Every remaining entry must be divisible by the pivot.
        std::size_t bad_row = a_.rows();
        for (std::size_t i = t + 1; i < a_.rows() && bad_row == a_.rows(); ++i)
          for (std::size_t j = t + 1; j < a_.cols(); ++j)
            if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
              bad_row = i;
              break;
            }
        if (bad_row == a_.rows()) break;
        add_row(t, bad_row, 1);
      }
      if (a_(t, t) < 0) negate_row(t);
      diag.push_back(a_(t, t));
    }
    SmithForm out;
    out.divisors = std::move(diag);
    if (track_) {
      out.left = std::move(u_);
      out.right = std::move(v_);
    }
    return out;
  }

 private:
  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        if (!found || cmpabs(a_(i, j), a_(bi, bj)) < 0) {
          bi = i;
          bj = j;
          found = true;
          if (abs(a_(i, j)) == 1) goto done;
        }
      }
  done:
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Reduces row and column t to zero apart from the pivot.
  void clear_cross(std::size_t t) {
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (a_(i, t) != 0) {
          swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (a_(t, j) != 0) {
          swap_cols(t, j);
          changed = true;
        }
      }
      if (!changed) return;
    }
  }

  static int cmpabs(const BigInt& x, const BigInt& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

  void swap_rows(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    if (track_) u_.swap_rows(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    if (track_) v_.swap_cols(x, y);
  }
  void negate_row(std::size_t x) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(x, j) = -a_(x, j);
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(x, j) = -u_(x, j);
  }
  // row x += f * row y
  void add_row(std::size_t x, std::size_t y, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(y, j) != 0) {
        a_(x, j) += f * a_(y, j);
        check_growth(a_(x, j));
      }
    if (track_)
      for (std::size_t j = 0; j < u_.cols(); ++j)
        if (u_(y, j) != 0) u_(x, j) += f * u_(y, j);
  }
  // col x += f * col y
  void add_col(std::size_t x, std::size_t y, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, y) != 0) {
        a_(i, x) += f * a_(i, y);
        check_growth(a_(i, x));
      }
    if (track_)
      for (std::size_t i = 0; i < v_.rows(); ++i)
        if (v_(i, y) != 0) v_(i, x) += f * v_(i, y);
  }

  void check_growth(const BigInt& x) const {
    if (max_bits_ != 0 && mpz_sizeinbase(x.get_mpz_t(), 2) > max_bits_) throw EntryGrowth{};
  }

  BigMatrix a_;
  bool track_;
  std::size_t max_bits_;
  BigMatrix u_, v_;
};

// Fraction-free elimination with full pivoting. Returns the rank and the
// absolute value of a nonzero minor of that size.
std::pair<std::size_t, BigInt> rank_and_minor(BigMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = r; i < rows && pi == rows; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rows) break;
    a.swap_rows(r, pi);
    a.swap_cols(r, pj);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = r + 1; j < cols; ++j) {
        BigInt x = a(r, r) * a(i, j) - a(i, r) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, r) = 0;
    }
    prev = a(r, r);
  }
  return {r, abs(prev)};
}

void reduce_mod(BigInt& x, const BigInt& d) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); }

// Makes (t, t) the gcd of (t, t) and the entry at `other` along one line
// (rows when `by_rows`, otherwise columns), clearing that entry. Returns
// false if the pivot changed.
bool combine(BigMatrix& a, std::size_t t, std::size_t other, bool by_rows, const BigInt& d) {
  auto at = [&](std::size_t line, std::size_t k) -> BigInt& { return by_rows ? a(line, k) : a(k, line); };
  const std::size_t len = by_rows ? a.cols() : a.rows();
  const BigInt p = at(t, t), b = at(other, t);
  if (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t())) {
    const BigInt q = b / p;
    for (std::size_t k = t; k < len; ++k) {
      at(other, k) -= q * at(t, k);
      reduce_mod(at(other, k), d);
    }
    return true;
  }
  BigInt g, s, u;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t(), b.get_mpz_t());
  const BigInt pg = p / g, bg = b / g;
  for (std::size_t k = t; k < len; ++k) {
    BigInt x = s * at(t, k) + u * at(other, k);
    BigInt y = pg * at(other, k) - bg * at(t, k);
    reduce_mod(x, d);
    reduce_mod(y, d);
    at(t, k) = std::move(x);
    at(other, k) = std::move(y);
  }
  return false;
}

}  // namespace

SmithForm smith_normal_form_modular(const BigMatrix& m) {
  SmithForm out;
  const auto [rank, minor] = rank_and_minor(m);
  if (rank == 0) return out;
  if (minor == 1) {
    out.divisors.assign(rank, BigInt(1));
    return out;
  }
  const BigInt& d = minor;
  BigMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduce_mod(a(i, j), d);

  // Diagonalize over Z/d, then read each diagonal entry as its gcd with d.
  const std::size_t limit = std::min(a.rows(), a.cols());
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pi = a.rows(), pj = a.cols();
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j)
        if (a(i, j) != 0 && (pi == a.rows() || a(i, j) < a(pi, pj))) pi = i, pj = j;
    if (pi == a.rows()) break;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    for (bool clean = false; !clean;) {
      clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i)
        if (a(i, t) != 0) combine(a, t, i, true, d);
      for (std::size_t j = t + 1; j < a.cols(); ++j)
        if (a(t, j) != 0 && !combine(a, t, j, false, d)) clean = false;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a(t, t).get_mpz_t(), d.get_mpz_t());
    diag.push_back(g);
  }
  diag.resize(limit, d);
  // Diagonal to divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = std::move(g);
      diag[j] = std::move(l);
    }
  diag.resize(rank);
  out.divisors = std::move(diag);
  return out;
}

SmithForm smith_normal_form(const BigMatrix& m, bool with_transforms) {
  if (with_transforms) return Reducer(m, true).run();
  // Sparse small-entry matrices reduce directly; on entry growth the
  // modular method takes over.
  try {
    return Reducer(m, false, 256).run();
  } catch (const EntryGrowth&) {
    return smith_normal_form_modular(m);
  }
}

SmithForm smith_normal_form(const IntMatrix& m, bool with_transforms) {
  return smith_normal_form(to_big(m), with_transforms);
}

BigMatrix smith_diagonal(std::size_t rows, std::size_t cols, const std::vector<BigInt>& divisors) {
  BigMatrix d(rows, cols);
  for (std::size_t i = 0; i < divisors.size(); ++i) d(i, i) = divisors[i];
  return d;
}

bool in_integer_image(const IntMatrix& m, const std::vector<BigInt>& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("in_integer_image: length mismatch");
  // y lies in the column lattice iff appending it keeps the rank and the
  // product of the invariant factors.
  BigMatrix ext(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) ext(i, j) = m(i, j);
    ext(i, m.cols()) = y[i];
  }
  const auto a = smith_normal_form(to_big(m)).divisors;
  const auto b = smith_normal_form(ext).divisors;
  if (a.size() != b.size()) return false;
  BigInt pa = 1, pb = 1;
  for (const auto& x : a) pa *= x;
  for (const auto& x : b) pb *= x;
  return pa == pb;
}

}  // namespace gad
