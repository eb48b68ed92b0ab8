#pragma once

#include <cstdint>
#include <random>

#include "lsa/coords.hpp"
#include "lsa/scalar.hpp"

namespace lsa {

/// Deterministic source of random polynomials/sections for property checks.
/// All draws use only base variables; parameters stay reserved for the
/// generic-affine layers.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }

  mpq_class small_rational(bool allow_zero = true) {
    int n = uniform(allow_zero ? -3 : 1, 3);
    if (!allow_zero && n == 0) n = 1;
    return mpq_class(n);
  }

  /// Random polynomial scalar of total degree <= max_deg in the base vars.
  Scalar poly_scalar(const VarSet& vars, int max_deg, bool allow_zero = true);

  /// Random section/covector with polynomial coefficients.
  Coords coords(const VarSet& vars, int rank, int max_deg);

 private:
  std::mt19937_64 gen_;
};

}  // namespace lsa
