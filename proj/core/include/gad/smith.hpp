#pragma once

#include <optional>
#include <vector>

#include "gad/matrix.hpp"

namespace gad {

/// Smith normal form D = U * M * V with U, V unimodular. `divisors` holds
/// the nonzero diagonal entries d1 | d2 | ... (all positive, ones included).
struct SmithForm {
  std::vector<BigInt> divisors;
  std::optional<BigMatrix> left;   // U
  std::optional<BigMatrix> right;  // V
};

/// Without transforms, switches to the modular method when entries grow.
/// With transforms, dense matrices can get expensive.
SmithForm smith_normal_form(const IntMatrix& m, bool with_transforms = false);
SmithForm smith_normal_form(const BigMatrix& m, bool with_transforms = false);

/// Divisors only: elimination modulo a nonzero minor of full rank size,
/// which every nonzero divisor divides.
SmithForm smith_normal_form_modular(const BigMatrix& m);

/// The rows x cols matrix with `divisors` on the diagonal.
BigMatrix smith_diagonal(std::size_t rows, std::size_t cols, const std::vector<BigInt>& divisors);

/// True if y = M x has an integer solution x.
bool in_integer_image(const IntMatrix& m, const std::vector<BigInt>& y);

}  // namespace gad
