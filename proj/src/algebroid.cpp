#include "lsa/algebroid.hpp"

#include <cassert>

namespace lsa {

namespace {

void require_section(const AlgebroidStructure& alg, const Coords& x) {
  if (x.rank() != alg.rank) throw ShapeMismatch("section rank != bundle rank");
  if (!x.c.empty() && x.width() != alg.width())
    throw ShapeMismatch("scalar width mismatch");
}

std::string triple_name(const char* sym, int i, int j, int k) {
  return std::string("(") + sym + std::to_string(i + 1) + "," + sym +
         std::to_string(j + 1) + "," + sym + std::to_string(k + 1) + ")";
}

}  // namespace

AlgebroidStructure AlgebroidStructure::abelian(Kind kind, int rank, VarSetPtr vars) {
  AlgebroidStructure a;
  a.kind = kind;
  a.vars = std::move(vars);
  a.rank = rank;
  a.products.assign(rank, std::vector<Coords>(rank, Coords(rank, a.vars->width())));
  a.anchor.assign(rank, VectorField::zero(*a.vars));
  return a;
}

VectorField AlgebroidStructure::anchor_of(const Coords& x) const {
  require_section(*this, x);
  VectorField out = VectorField::zero(*vars);
  for (int i = 0; i < rank; ++i) {
    if (x.c[i].is_zero()) continue;
    out = out + anchor[i].scaled(x.c[i]);
  }
  return out;
}

AlgebroidStructure AlgebroidStructure::with_extra_params(int extra) const {
  AlgebroidStructure out = *this;
  out.vars = std::make_shared<VarSet>(vars->with_extra_params(extra));
  int w = out.vars->width();
  for (auto& row : out.products)
    for (auto& p : row)
      p = p.widened(w);
  for (auto& a : out.anchor)
    for (auto& c : a.comp) c = c.widened(w);
  return out;
}

Section multiply(const AlgebroidStructure& alg, const Section& x, const Section& y) {
  require_section(alg, x);
  require_section(alg, y);
  Section out(alg.rank, alg.width());
  for (int i = 0; i < alg.rank; ++i) {
    if (x.c[i].is_zero()) continue;
    for (int j = 0; j < alg.rank; ++j) {
      if (y.c[j].is_zero()) continue;
      Scalar f = x.c[i] * y.c[j];
      const Coords& p = alg.products[i][j];
      for (int k = 0; k < alg.rank; ++k) {
        if (p.c[k].is_zero()) continue;
        out.c[k] += f * p.c[k];
      }
    }
  }
  VectorField ax = alg.anchor_of(x);
  for (int k = 0; k < alg.rank; ++k) out.c[k] += ax.apply(y.c[k]);
  return out;
}

Section bracket(const AlgebroidStructure& lie, const Section& x, const Section& y) {
  assert(lie.kind == Kind::Lie);
  require_section(lie, x);
  require_section(lie, y);
  Section out(lie.rank, lie.width());
  for (int i = 0; i < lie.rank; ++i)
    for (int j = 0; j < lie.rank; ++j) {
      if (x.c[i].is_zero() || y.c[j].is_zero()) continue;
      Scalar f = x.c[i] * y.c[j];
      const Coords& p = lie.products[i][j];
      for (int k = 0; k < lie.rank; ++k)
        if (!p.c[k].is_zero()) out.c[k] += f * p.c[k];
    }
  VectorField ax = lie.anchor_of(x), ay = lie.anchor_of(y);
  for (int k = 0; k < lie.rank; ++k) {
    out.c[k] += ax.apply(y.c[k]);
    out.c[k] -= ay.apply(x.c[k]);
  }
  return out;
}

Section ls_commutator(const AlgebroidStructure& alg, const Section& x, const Section& y) {
  return multiply(alg, x, y) - multiply(alg, y, x);
}

Section associator(const AlgebroidStructure& alg, const Section& x, const Section& y,
                   const Section& z) {
  return multiply(alg, x, multiply(alg, y, z)) -
         multiply(alg, multiply(alg, x, y), z);
}

Report check_left_symmetric(const AlgebroidStructure& alg) {
  Report rep("check_left_symmetric");
  if (alg.kind != Kind::LeftSymmetric) {
    rep.fail("kind", "not a left-symmetric structure");
    return rep;
  }
  const VarSet& vs = *alg.vars;
  // (a) associator symmetry on basis triples; the associator is tensorial in
  // its first two slots, and (b) supplies the third-slot function terms.
  for (int i = 0; i < alg.rank; ++i)
    for (int j = i + 1; j < alg.rank; ++j)
      for (int k = 0; k < alg.rank; ++k) {
        Section ei = Section::basis(alg.rank, i, vs.width());
        Section ej = Section::basis(alg.rank, j, vs.width());
        Section ek = Section::basis(alg.rank, k, vs.width());
        Section defect = associator(alg, ei, ej, ek) - associator(alg, ej, ei, ek);
        if (!defect.is_zero())
          rep.fail(triple_name("e", i, j, k), to_string(defect, vs, "e"));
      }
  // (b) anchor is a morphism to vector fields
  for (int i = 0; i < alg.rank; ++i)
    for (int j = i + 1; j < alg.rank; ++j) {
      Section ei = Section::basis(alg.rank, i, vs.width());
      Section ej = Section::basis(alg.rank, j, vs.width());
      VectorField lhs = commutator(alg.anchor[i], alg.anchor[j]);
      VectorField rhs = alg.anchor_of(ls_commutator(alg, ei, ej));
      if (!(lhs - rhs).is_zero())
        rep.fail("[a(e" + std::to_string(i + 1) + "),a(e" + std::to_string(j + 1) + ")]",
                 to_string(lhs - rhs, vs));
    }
  return rep;
}

Report check_lie_algebroid(const AlgebroidStructure& lie) {
  Report rep("check_lie_algebroid");
  if (lie.kind != Kind::Lie) {
    rep.fail("kind", "not a lie structure");
    return rep;
  }
  const VarSet& vs = *lie.vars;
  for (int i = 0; i < lie.rank; ++i)
    for (int j = i; j < lie.rank; ++j) {
      const Coords& cij = lie.products[i][j];
      const Coords& cji = lie.products[j][i];
      for (int l = 0; l < lie.rank; ++l)
        if (cij.c[l] != -cji.c[l]) {
          rep.fail("c" + std::to_string(i + 1) + "," + std::to_string(j + 1),
                   "bracket table not skew");
          return rep;
        }
    }
  for (int i = 0; i < lie.rank; ++i)
    for (int j = i + 1; j < lie.rank; ++j)
      for (int k = j + 1; k < lie.rank; ++k) {
        Section ei = Section::basis(lie.rank, i, vs.width());
        Section ej = Section::basis(lie.rank, j, vs.width());
        Section ek = Section::basis(lie.rank, k, vs.width());
        Section jac = bracket(lie, bracket(lie, ei, ej), ek) +
                      bracket(lie, bracket(lie, ej, ek), ei) +
                      bracket(lie, bracket(lie, ek, ei), ej);
        if (!jac.is_zero()) rep.fail(triple_name("e", i, j, k), to_string(jac, vs, "e"));
      }
  for (int i = 0; i < lie.rank; ++i)
    for (int j = i + 1; j < lie.rank; ++j) {
      Section ei = Section::basis(lie.rank, i, vs.width());
      Section ej = Section::basis(lie.rank, j, vs.width());
      VectorField lhs = commutator(lie.anchor[i], lie.anchor[j]);
      VectorField rhs = lie.anchor_of(bracket(lie, ei, ej));
      if (!(lhs - rhs).is_zero())
        rep.fail("[a(e" + std::to_string(i + 1) + "),a(e" + std::to_string(j + 1) + ")]",
                 to_string(lhs - rhs, vs));
    }
  return rep;
}

AlgebroidStructure sub_adjacent(const AlgebroidStructure& alg) {
  Report pre = check_left_symmetric(alg);
  if (!pre.pass) throw InvalidStructure("sub_adjacent: " + pre.summary());
  AlgebroidStructure out = alg;
  out.kind = Kind::Lie;
  for (int i = 0; i < alg.rank; ++i)
    for (int j = 0; j < alg.rank; ++j)
      out.products[i][j] = alg.products[i][j] - alg.products[j][i];
  return out;
}

Matrix left_op(const AlgebroidStructure& alg, const Section& x) {
  require_section(alg, x);
  Matrix m(alg.rank, alg.rank, alg.width());
  for (int j = 0; j < alg.rank; ++j) {
    Section col = multiply(alg, x, Section::basis(alg.rank, j, alg.width()));
    for (int k = 0; k < alg.rank; ++k) m.at(k, j) = col.c[k];
  }
  return m;
}

Matrix right_op(const AlgebroidStructure& alg, const Section& x) {
  require_section(alg, x);
  Matrix m(alg.rank, alg.rank, alg.width());
  for (int j = 0; j < alg.rank; ++j) {
    Section col = multiply(alg, Section::basis(alg.rank, j, alg.width()), x);
    for (int k = 0; k < alg.rank; ++k) m.at(k, j) = col.c[k];
  }
  return m;
}

Matrix dual_left_op(const AlgebroidStructure& alg, int i) {
  return -left_op(alg, Section::basis(alg.rank, i, alg.width())).transpose();
}

Covector dual_apply(const AlgebroidStructure& alg, const Section& x, const Covector& xi) {
  require_section(alg, x);
  require_section(alg, xi);
  VectorField ax = alg.anchor_of(x);
  Covector out(alg.rank, alg.width());
  for (int k = 0; k < alg.rank; ++k) {
    Section ek = Section::basis(alg.rank, k, alg.width());
    out.c[k] = ax.apply(xi.c[k]) - pairing(xi, multiply(alg, x, ek));
  }
  return out;
}

Covector covector_lie_der(const AlgebroidStructure& alg, const Section& x,
                          const Covector& xi) {
  require_section(alg, x);
  require_section(alg, xi);
  VectorField ax = alg.anchor_of(x);
  Covector out(alg.rank, alg.width());
  for (int k = 0; k < alg.rank; ++k) {
    Section ek = Section::basis(alg.rank, k, alg.width());
    Section br = (alg.kind == Kind::Lie) ? bracket(alg, x, ek) : ls_commutator(alg, x, ek);
    out.c[k] = ax.apply(xi.c[k]) - pairing(xi, br);
  }
  return out;
}

Covector covector_right_mult(const AlgebroidStructure& alg, const Section& x,
                             const Covector& xi) {
  require_section(alg, x);
  require_section(alg, xi);
  Covector out(alg.rank, alg.width());
  for (int k = 0; k < alg.rank; ++k) {
    Section ek = Section::basis(alg.rank, k, alg.width());
    out.c[k] = -pairing(xi, multiply(alg, ek, x));
  }
  return out;
}

Covector dM_function(const AlgebroidStructure& alg, const Scalar& f) {
  Covector out(alg.rank, alg.width());
  for (int k = 0; k < alg.rank; ++k) out.c[k] = alg.anchor[k].apply(f);
  return out;
}

std::vector<Scalar> RepOperator::apply(const std::vector<Scalar>& v) const {
  std::vector<Scalar> out = mat.apply(v);
  for (size_t k = 0; k < out.size(); ++k) out[k] += anchor.apply(v[k]);
  return out;
}

namespace {

Matrix derive_entries(const Matrix& m, const VectorField& v) {
  Matrix out(m.rows(), m.cols(), m.width());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = v.apply(m.at(i, j));
  return out;
}

}  // namespace

Report check_representation(const AlgebroidStructure& alg,
                            const std::vector<RepOperator>& rho,
                            const std::vector<Matrix>& mu) {
  Report rep("check_representation");
  if (static_cast<int>(rho.size()) != alg.rank || static_cast<int>(mu.size()) != alg.rank) {
    rep.fail("shape", "rho/mu must supply one operator per basis section");
    return rep;
  }
  const int m = rho[0].mat.rows();
  const int w = alg.width();
  // flatness: rho([e_i,e_j]) = [rho(e_i), rho(e_j)] as first-order operators
  for (int i = 0; i < alg.rank; ++i)
    for (int j = i + 1; j < alg.rank; ++j) {
      Section br = ls_commutator(alg, Section::basis(alg.rank, i, w),
                                 Section::basis(alg.rank, j, w));
      Matrix lhs_mat(m, m, w);
      VectorField lhs_anchor = VectorField::zero(*alg.vars);
      for (int k = 0; k < alg.rank; ++k) {
        if (br.c[k].is_zero()) continue;
        lhs_mat = lhs_mat + rho[k].mat.scaled(br.c[k]);
        lhs_anchor = lhs_anchor + rho[k].anchor.scaled(br.c[k]);
      }
      Matrix rhs_mat = rho[i].mat * rho[j].mat - rho[j].mat * rho[i].mat +
                       derive_entries(rho[j].mat, rho[i].anchor) -
                       derive_entries(rho[i].mat, rho[j].anchor);
      VectorField rhs_anchor = commutator(rho[i].anchor, rho[j].anchor);
      if (!(lhs_mat - rhs_mat).is_zero() || !(lhs_anchor - rhs_anchor).is_zero()) {
        throw InvalidStructure("rho is not flat at pair (e" + std::to_string(i + 1) +
                               ",e" + std::to_string(j + 1) + ")");
      }
    }
  // rho(x)mu(y)e - mu(y)rho(x)e = mu(x.y)e - mu(y)mu(x)e on basis pairs
  for (int i = 0; i < alg.rank; ++i)
    for (int j = 0; j < alg.rank; ++j) {
      Matrix lhs = rho[i].mat * mu[j] - mu[j] * rho[i].mat +
                   derive_entries(mu[j], rho[i].anchor);
      Section prod = alg.products[i][j];
      Matrix mu_prod(m, m, w);
      for (int k = 0; k < alg.rank; ++k)
        if (!prod.c[k].is_zero()) mu_prod = mu_prod + mu[k].scaled(prod.c[k]);
      Matrix rhs = mu_prod - mu[j] * mu[i];
      if (!(lhs - rhs).is_zero())
        rep.fail("(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")",
                 "representation condition residual nonzero");
    }
  return rep;
}

SemidirectSymplectic semidirect_symplectic(const AlgebroidStructure& alg, bool validate) {
  if (validate) {
    Report pre = check_left_symmetric(alg);
    if (!pre.pass) throw InvalidStructure("semidirect_symplectic: " + pre.summary());
  }
  const int r = alg.rank;
  const int w = alg.width();
  AlgebroidStructure big = AlgebroidStructure::abelian(Kind::Lie, 2 * r, alg.vars);
  // [e_i, e_j]_S = [e_i, e_j]_A
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Coords br = alg.products[i][j] - alg.products[j][i];
      for (int k = 0; k < r; ++k) big.products[i][j].c[k] = br.c[k];
    }
  // [e_i, eps^j]_S = L*_{e_i} eps^j
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Covector lst = dual_apply(alg, Section::basis(r, i, w), Covector::basis(r, j, w));
      for (int k = 0; k < r; ++k) {
        big.products[i][r + j].c[r + k] = lst.c[k];
        big.products[r + j][i].c[r + k] = -lst.c[k];
      }
    }
  for (int i = 0; i < r; ++i) big.anchor[i] = alg.anchor[i];
  Matrix omega(2 * r, 2 * r, w);
  for (int i = 0; i < r; ++i) {
    omega.at(i, r + i) = -Scalar::one(w);
    omega.at(r + i, i) = Scalar::one(w);
  }
  return {std::move(big), std::move(omega)};
}

std::string basis_name(int i, int rank2, int r) {
  (void)rank2;
  if (i < r) return "e" + std::to_string(i + 1);
  return "eps" + std::to_string(i - r + 1);
}

}  // namespace lsa
