#pragma once

#include "lsa/calculus.hpp"

namespace lsa {

/// A pair of left-symmetric structures (A on the frame e1..er, A* on the
/// dual frame eps1..epsr) to be tested for the bialgebroid compatibility
/// conditions.
struct BialgebroidCandidate {
  AlgebroidStructure A;
  AlgebroidStructure Astar;

  int rank() const { return A.rank; }
  int width() const { return A.width(); }
  const VarSet& vars() const { return *A.vars; }

  static BialgebroidCandidate with_trivial_dual(const AlgebroidStructure& A);
  BialgebroidCandidate with_extra_params(int extra) const;
};

/// Symmetric r x r scalar matrix: H in Sym^2(A) (entries H(eps^i, eps^j)) or
/// a covariant metric g (entries g(e_i, e_j)).
struct SymTensor {
  Matrix m;

  static SymTensor from_matrix(Matrix mm);
  int rank() const { return m.rows(); }

  /// H#(xi) with <H#(xi), eta> = H(xi, eta).
  Section sharp(const Covector& xi) const;
  /// As a degree-1 tensor (carrier C^2 of the opposite structure).
  Tensor as_tensor() const;
  Scalar eval(const Covector& a, const Covector& b) const;
};

/// delta and delta_* of a candidate: coboundaries of A (on dual-frame
/// cochains) and of A* (on frame cochains).
FormTensor delta_A(const BialgebroidCandidate& cand, const Covector& xi);
PolyTensor delta_Astar(const BialgebroidCandidate& cand, const Section& x);

/// cond2 defect delta_*[x,y]_A - L_x delta_* y + L_y delta_* x; zero on
/// bialgebroids.
PolyTensor cond2_defect(const BialgebroidCandidate& cand, const Section& x,
                        const Section& y);
/// cond1 defect delta[xi,eta]_{A*} - L_xi delta eta + L_eta delta xi.
FormTensor cond1_defect(const BialgebroidCandidate& cand, const Covector& xi,
                        const Covector& eta);

/// Definition check: both structures valid, cond1/cond2 zero on basis pairs
/// and for generic affine-coefficient sections, plus the Lemma-style
/// d_M/d_M* diagnostics for generic f.
Report check_bialgebroid(const BialgebroidCandidate& cand);

/// [a_A(x), a_{A*}(xi)] = a_{A*}(L*_x xi) - a_A(L*_xi x) on basis pairs.
Report check_anchor_compat(const BialgebroidCandidate& cand);

/// Raw five-term value of [[H,H]](xi1, xi2, xi3).
Scalar s_bracket_value(const AlgebroidStructure& A, const SymTensor& H,
                       const Covector& xi1, const Covector& xi2, const Covector& xi3);

/// [[H,H]] in Gamma(wedge^2 A (x) A).
PolyTensor s_bracket(const AlgebroidStructure& A, const SymTensor& H);

/// Dual multiplication xi .H eta = L_{H#xi} eta - R_{H#eta} xi - dM(H(xi,eta))
/// together with the anchor a_{A*} = a_A o H#, as a structure on the dual.
AlgebroidStructure mult_from_H(const AlgebroidStructure& A, const SymTensor& H);

/// H#(xi .H eta) - H#(xi) .A H#(eta) - [[H,H]](xi, . , eta); identically zero.
Section homo_defect(const AlgebroidStructure& A, const SymTensor& H,
                    const Covector& xi, const Covector& eta);

/// Computes the two equivalent predicates [[H,H]] == 0 and delta(H^{-1}) == 0
/// independently; passes iff they agree. Notes record each truth value.
Report s_equation_equiv(const AlgebroidStructure& A, const SymTensor& H);

/// The (A, A* = mult_from_H) candidate; requires [[H,H]] == 0
/// (SEquationFailed otherwise) and verifies H# is a homomorphism plus the
/// anchor identity before handing back a checked bialgebroid.
BialgebroidCandidate build_bialgebroid_from_H(const AlgebroidStructure& A,
                                              const SymTensor& H);

}  // namespace lsa
