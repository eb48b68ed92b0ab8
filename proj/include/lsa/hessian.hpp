#pragma once

#include "lsa/presymplectic.hpp"

namespace lsa {

/// Flat torsion-free connection on the coordinate frame: Christoffel data
/// nabla_{d_i} d_j = sum_k Gamma_ijk d_k over n base variables.
struct FlatConnection {
  VarSetPtr vars;                                   // n = vars->nbase()
  std::vector<std::vector<Coords>> christoffel;     // [i][j] -> Coords over d_k

  static FlatConnection coordinate(VarSetPtr vars);  // all Gamma = 0
  int n() const { return vars->nbase(); }

  /// Throws NotTorsionFree / NotFlat with witness indices.
  void validate() const;
};

struct Metric {
  SymTensor g;  // entries g(d_i, d_j); det g != 0 required where used
};

struct Potential {
  Scalar phi;  // polynomial in the base variables
};

/// (TM, nabla, id) as a left-symmetric algebroid: products Gamma_ijk,
/// anchor a(d_i) = d_i.
AlgebroidStructure connection_algebroid(const FlatConnection& conn);

/// Second-derivative metric g_ij = d^2 phi / dx_i dx_j of a polynomial
/// potential; Degenerate when det g == 0 identically.
Metric hessian_metric(const Potential& phi, const FlatConnection& conn);

/// Both characterizations per the equivalence: delta(g) == 0 via the
/// left-symmetric coboundary, and the Codazzi condition
/// nabla_x g(y,z) = nabla_y g(x,z); the two verdicts must agree.
Report check_pseudo_hessian(const FlatConnection& conn, const Metric& g);

/// (T_nabla M, T*_H M) with H = g^{-1}; passes check_bialgebroid and the
/// S-equation/cocycle agreement by the time it is returned.
BialgebroidCandidate hessian_bialgebroid(const FlatConnection& conn, const Metric& g);

/// double(hessian_bialgebroid(conn, g)).
PreSymplecticStructure hessian_double(const FlatConnection& conn, const Metric& g);

}  // namespace lsa
