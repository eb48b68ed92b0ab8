#include "lsa/hessian.hpp"

namespace lsa {

FlatConnection FlatConnection::coordinate(VarSetPtr vars) {
  FlatConnection c;
  int n = vars->nbase();
  int w = vars->width();
  c.vars = std::move(vars);
  c.christoffel.assign(n, std::vector<Coords>(n, Coords(n, w)));
  return c;
}

void FlatConnection::validate() const {
  const int nn = n();
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j)
      if (christoffel[i][j] != christoffel[j][i])
        throw NotTorsionFree("Gamma(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") != Gamma(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
  // curvature: d_i Gamma_jl^m - d_j Gamma_il^m + Gamma_jl^s Gamma_is^m
  //            - Gamma_il^s Gamma_js^m = 0
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j)
      for (int l = 0; l < nn; ++l)
        for (int m = 0; m < nn; ++m) {
          Scalar val = christoffel[j][l].c[m].derive(i) - christoffel[i][l].c[m].derive(j);
          for (int s = 0; s < nn; ++s) {
            val += christoffel[j][l].c[s] * christoffel[i][s].c[m];
            val -= christoffel[i][l].c[s] * christoffel[j][s].c[m];
          }
          if (!val.is_zero())
            throw NotFlat("R(d" + std::to_string(i + 1) + ",d" + std::to_string(j + 1) +
                          ")d" + std::to_string(l + 1) + " has component " +
                          std::to_string(m + 1) + " = " + to_string(val, *vars));
        }
}

AlgebroidStructure connection_algebroid(const FlatConnection& conn) {
  conn.validate();
  const int n = conn.n();
  const int w = conn.vars->width();
  AlgebroidStructure alg = AlgebroidStructure::abelian(Kind::LeftSymmetric, n, conn.vars);
  alg.products = conn.christoffel;
  for (int i = 0; i < n; ++i) {
    VectorField v = VectorField::zero(*conn.vars);
    v.comp[i] = Scalar::one(w);
    alg.anchor[i] = v;
  }
  return alg;
}

Metric hessian_metric(const Potential& phi, const FlatConnection& conn) {
  if (!phi.phi.is_polynomial())
    throw InvalidStructure("potential must be a polynomial");
  const int n = conn.n();
  const int w = conn.vars->width();
  Matrix g(n, n, w);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = phi.phi.derive(i).derive(j);
  if (g.det().is_zero()) throw Degenerate("Hessian of the potential is degenerate");
  return Metric{SymTensor::from_matrix(std::move(g))};
}

namespace {

Scalar nabla_g(const FlatConnection& conn, const Matrix& g, int x, int y, int z) {
  // nabla_x g(y,z) = x g(y,z) - g(nabla_x y, z) - g(y, nabla_x z)
  Scalar val = g.at(y, z).derive(x);
  for (int s = 0; s < conn.n(); ++s) {
    val -= conn.christoffel[x][y].c[s] * g.at(s, z);
    val -= conn.christoffel[x][z].c[s] * g.at(y, s);
  }
  return val;
}

}  // namespace

Report check_pseudo_hessian(const FlatConnection& conn, const Metric& g) {
  Report rep("check_pseudo_hessian");
  AlgebroidStructure alg = connection_algebroid(conn);
  FormTensor dg = coboundary_lsa(alg, g.g.as_tensor());
  bool cocycle_ok = dg.is_zero();
  if (!cocycle_ok) {
    const auto& [key, c] = *dg.terms().begin();
    rep.fail("delta g at (d" + std::to_string(key.wedge[0] + 1) + ",d" +
                 std::to_string(key.wedge[1] + 1) + ",d" + std::to_string(key.last + 1) + ")",
             to_string(c, *conn.vars));
  }
  bool codazzi_ok = true;
  const int n = conn.n();
  for (int i = 0; i < n && codazzi_ok; ++i)
    for (int j = i + 1; j < n && codazzi_ok; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar diff = nabla_g(conn, g.g.m, i, j, k) - nabla_g(conn, g.g.m, j, i, k);
        if (!diff.is_zero()) {
          codazzi_ok = false;
          if (cocycle_ok)
            rep.fail("Codazzi at (d" + std::to_string(i + 1) + ",d" + std::to_string(j + 1) +
                         ",d" + std::to_string(k + 1) + ")",
                     to_string(diff, *conn.vars));
          break;
        }
      }
  rep.note(std::string("delta g == 0: ") + (cocycle_ok ? "true" : "false"));
  rep.note(std::string("Codazzi condition: ") + (codazzi_ok ? "true" : "false"));
  if (cocycle_ok != codazzi_ok)
    rep.fail("criteria agreement", "delta g and Codazzi verdicts disagree");
  return rep;
}

BialgebroidCandidate hessian_bialgebroid(const FlatConnection& conn, const Metric& g) {
  Report hess = check_pseudo_hessian(conn, g);
  if (!hess.pass) throw InvalidStructure("not pseudo-Hessian: " + hess.summary());
  if (g.g.m.det().is_zero()) throw Degenerate("metric is degenerate");
  AlgebroidStructure alg = connection_algebroid(conn);
  SymTensor H = SymTensor::from_matrix(g.g.m.inverse());
  // Prop.-level crosscheck: [[H,H]] == 0 iff delta(H^{-1}) = delta g == 0
  Report equiv = s_equation_equiv(alg, H);
  if (!equiv.pass) throw InvalidStructure("S-equation/cocycle disagreement: " + equiv.summary());
  return build_bialgebroid_from_H(alg, H);
}

PreSymplecticStructure hessian_double(const FlatConnection& conn, const Metric& g) {
  return double_of(hessian_bialgebroid(conn, g), false);
}

}  // namespace lsa
