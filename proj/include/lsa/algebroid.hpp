#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lsa/coords.hpp"
#include "lsa/linalg.hpp"
#include "lsa/report.hpp"

namespace lsa {

enum class Kind { LeftSymmetric, Lie };

/// A left-symmetric or Lie algebroid on a trivialized rank-r bundle:
/// products on basis sections (e_i o e_j = sum_k c_ijk e_k) plus anchor
/// vector fields a(e_i). Extension to function coefficients is by the
/// defining Leibniz rules, so validity reduces to finitely many basis
/// identities (see check_left_symmetric / check_lie_algebroid).
///
/// The same type models a dual structure (A*, ._{A*}, a_{A*}): its "sections"
/// are then coordinate vectors in the dual frame eps1..epsr.
struct AlgebroidStructure {
  Kind kind = Kind::LeftSymmetric;
  VarSetPtr vars;
  int rank = 0;
  std::vector<std::vector<Coords>> products;  // products[i][j] = e_i o e_j
  std::vector<VectorField> anchor;

  static AlgebroidStructure abelian(Kind kind, int rank, VarSetPtr vars);

  int width() const { return vars->width(); }
  const Coords& basis_product(int i, int j) const { return products[i][j]; }
  VectorField anchor_of(const Coords& x) const;

  /// Rebuilds the structure over a varset with extra fresh parameters.
  AlgebroidStructure with_extra_params(int extra) const;
};

/// x ._A y extended by x.(fy) = f(x.y) + a(x)(f)y and (fx).y = f(x.y).
Section multiply(const AlgebroidStructure& alg, const Section& x, const Section& y);

/// [x,y]_A extended by [x,fy] = f[x,y] + a(x)(f)y; requires kind == Lie.
Section bracket(const AlgebroidStructure& lie, const Section& x, const Section& y);

/// Commutator x.y - y.x of a left-symmetric structure.
Section ls_commutator(const AlgebroidStructure& alg, const Section& x, const Section& y);

/// x.(y.z) - (x.y).z
Section associator(const AlgebroidStructure& alg, const Section& x, const Section& y,
                   const Section& z);

Report check_left_symmetric(const AlgebroidStructure& alg);
Report check_lie_algebroid(const AlgebroidStructure& lie);

/// Sub-adjacent Lie algebroid: bracket c_ijk - c_jik, same anchor.
AlgebroidStructure sub_adjacent(const AlgebroidStructure& alg);

/// Basis-coordinate matrices of Y -> X.Y and Y -> Y.X (anchor terms on
/// function coefficients are the caller's business, via multiply()).
Matrix left_op(const AlgebroidStructure& alg, const Section& x);
Matrix right_op(const AlgebroidStructure& alg, const Section& x);

/// Matrix of xi -> L*_{e_i} xi, i.e. minus the transpose of left_op(e_i).
Matrix dual_left_op(const AlgebroidStructure& alg, int i);

/// Full dual action: <dual_apply(x,xi), y> = a(x)<xi,y> - <xi, x.y>.
Covector dual_apply(const AlgebroidStructure& alg, const Section& x, const Covector& xi);

/// Lie-algebroid Lie derivative on the dual: <L_x xi, y> = a(x)<xi,y> - <xi,[x,y]>.
/// For kind == LeftSymmetric the sub-adjacent bracket is used.
Covector covector_lie_der(const AlgebroidStructure& alg, const Section& x,
                          const Covector& xi);

/// Dual right multiplication at degree zero: <R_x xi, y> = -<xi, y.x>.
Covector covector_right_mult(const AlgebroidStructure& alg, const Section& x,
                             const Covector& xi);

/// Differential of the sub-adjacent Lie algebroid on functions:
/// d_M f = sum_k a(e_k)(f) eps^k.
Covector dM_function(const AlgebroidStructure& alg, const Scalar& f);

/// First-order operator on a rank-m free module: v -> mat v + anchor(v).
struct RepOperator {
  Matrix mat;
  VectorField anchor;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
};

/// Checks that (rho, mu) is a representation: rho a flat representation of
/// the sub-adjacent Lie algebroid and
/// rho(x)mu(y) - mu(y)rho(x) = mu(x.y) - mu(y)mu(x) on basis pairs.
Report check_representation(const AlgebroidStructure& alg,
                            const std::vector<RepOperator>& rho,
                            const std::vector<Matrix>& mu);

struct SemidirectSymplectic {
  AlgebroidStructure algebroid;  // rank 2r, kind Lie
  Matrix omega;                  // 2r x 2r skew form [[0,-I],[I,0]]
};

/// (A^c x_{L*} A*, [.,.]_S, rho, omega): the semidirect symplectic Lie
/// algebroid of a valid left-symmetric algebroid.
SemidirectSymplectic semidirect_symplectic(const AlgebroidStructure& alg,
                                           bool validate = true);

std::string basis_name(int i, int rank2, int r);  // "e1".."er","eps1".."epsr"

}  // namespace lsa
