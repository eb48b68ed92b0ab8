#pragma once

#include <optional>

#include "lsa/jsonio.hpp"

namespace lsa {

struct SearchOptions {
  int dim = 2;
  double density = 0.5;
  int count = 5;
  uint64_t seed = 0;
  bool mc_filter = false;  // also search for H with [[H,H]] == 0
};

struct SearchHit {
  AlgebroidStructure alg;
  std::optional<SymTensor> H;
};

/// Rejection-samples left-symmetric structures over Q at a point (constant
/// structure coefficients, zero anchor); every emitted instance re-passes
/// check_left_symmetric, and with mc_filter every (alg, H) re-passes the
/// S-equation via s_bracket. Deterministic under seed.
std::vector<SearchHit> search_instances(const SearchOptions& opts);

Json catalog_to_json(const std::vector<SearchHit>& hits);

}  // namespace lsa
