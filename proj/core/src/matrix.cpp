#include "gad/matrix.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>

namespace gad {

__extension__ using u128 = unsigned __int128;

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = static_cast<long>(m(r, c));
  return out;
}

IntMatrix to_int(const BigMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).fits_slong_p()) throw std::overflow_error("matrix entry exceeds 64 bits");
      out(r, c) = m(r, c).get_si();
    }
  return out;
}

namespace {

// Bareiss forward elimination in place. Returns the rank; `sign` tracks row swaps.
std::size_t bareiss(BigMatrix& a, int& sign) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t rank = 0;
  BigInt prev = 1;
  sign = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      a.swap_rows(pivot, rank);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a(r, c) = a(rank, col) * a(r, c) - a(r, col) * a(rank, c);
        mpz_divexact(a(r, c).get_mpz_t(), a(r, c).get_mpz_t(), prev.get_mpz_t());
      }
      a(r, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank_q(const IntMatrix& m) {
  BigMatrix a = to_big(m);
  int sign = 1;
  return bareiss(a, sign);
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  BigMatrix a = to_big(m);
  int sign = 1;
  if (bareiss(a, sign) < a.rows()) return 0;
  BigInt det = a(a.rows() - 1, a.cols() - 1);
  return sign > 0 ? det : BigInt(-det);
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: modulus must be a prime >= 2");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  const auto mp = static_cast<std::int64_t>(p);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t v = m(r, c) % mp;
      if (v < 0) v += mp;
      a[r * cols + c] = static_cast<std::uint64_t>(v);
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<u128>(x) * y) % p);
  };
  auto inverse = [&](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot * cols + c], a[rank * cols + c]);
    const std::uint64_t inv = inverse(a[rank * cols + col]);
    for (std::size_t c = col; c < cols; ++c) a[rank * cols + c] = mulmod(a[rank * cols + c], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::uint64_t f = a[r * cols + col];
      if (f == 0) continue;
      for (std::size_t c = col; c < cols; ++c) {
        const std::uint64_t sub = mulmod(f, a[rank * cols + c]);
        auto& x = a[r * cols + c];
        x = x >= sub ? x - sub : x + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  std::size_t width = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      width = std::max(width, std::to_string(m(r, c)).size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << std::setw(static_cast<int>(width)) << m(r, c);
    }
    os << '\n';
  }
  return os;
}

}  // namespace gad
