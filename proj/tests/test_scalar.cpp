#include <doctest.h>

#include "lsa/rng.hpp"
#include "lsa/scalar.hpp"

using namespace lsa;

namespace {

VarSetPtr vars2() { return make_varset({"x1", "x2"}); }
VarSetPtr vars_xt() { return make_varset({"x"}, {"t1"}); }

Scalar S(const std::string& text, const VarSet& vs) { return parse_scalar(text, vs); }

// test-side long division oracle for univariate quotients: divides a by b in
// the single variable x, returning the exact quotient coefficients
Scalar longdiv_oracle(const std::vector<int>& a, const std::vector<int>& b, const VarSet& vs) {
  // dense univariate long division over Q, independent of Poly internals
  std::vector<mpq_class> rem(a.begin(), a.end());
  std::vector<mpq_class> div(b.begin(), b.end());
  if (rem.size() < div.size()) throw std::logic_error("oracle: deg a < deg b");
  std::vector<mpq_class> quot(rem.size() - div.size() + 1, 0);
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    mpq_class c = rem[k + div.size() - 1] / div.back();
    quot[k] = c;
    for (size_t i = 0; i < div.size(); ++i) rem[k + i] -= c * div[i];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::logic_error("oracle: remainder nonzero");
  Scalar x = Scalar::variable(vs.width(), 0);
  Scalar acc = Scalar::zero(vs.width());
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k)
    acc = acc * x + Scalar::constant(vs.width(), quot[k]);
  return acc;
}

}  // namespace

TEST_CASE("field operations on rational constants") {
  auto vs = vars2();
  Scalar half = S("1/2", *vs);
  CHECK(half + half == Scalar::one(vs->width()));
  Scalar x = S("x1", *vs);
  CHECK(x * S("1/x1", *vs) == Scalar::one(vs->width()));
  CHECK_THROWS_AS(S("1/(x1-x1)", *vs), DivisionByZero);
}

TEST_CASE("division matches the long-division oracle") {
  auto vs = make_varset({"x"});
  // (x^2 - 1) / (x - 1) = x + 1
  Scalar q = S("(x^2-1)/(x-1)", *vs);
  CHECK(q == longdiv_oracle({-1, 0, 1}, {-1, 1}, *vs));
  CHECK(q == S("x+1", *vs));
  // (x^3 + 3x^2 + 3x + 1) / (x + 1) = x^2 + 2x + 1
  Scalar q2 = S("(x^3+3*x^2+3*x+1)/(x+1)", *vs);
  CHECK(q2 == longdiv_oracle({1, 3, 3, 1}, {1, 1}, *vs));
}

TEST_CASE("reduction to canonical form") {
  auto vs = make_varset({"x1"});
  CHECK(S("(x1+1)^2/(x1+1)", *vs) == S("x1+1", *vs));
  // denominator made monic
  Scalar s = S("1/(2*x1)", *vs);
  CHECK(to_string(s, *vs) == "(1/2)/(x1)");
  CHECK(S("x1/x1", *vs) == Scalar::one(1));
}

TEST_CASE("field axioms hold structurally on random scalars") {
  auto vs = vars2();
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    Scalar a = rng.poly_scalar(*vs, 3);
    Scalar b = rng.poly_scalar(*vs, 3);
    Scalar c = rng.poly_scalar(*vs, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(vs->width()));
  }
  // random fraction reduction: (p*r)/(q*r) == p/q
  for (int t = 0; t < 25; ++t) {
    Scalar p = rng.poly_scalar(*vs, 2);
    Scalar q = rng.poly_scalar(*vs, 2, false);
    Scalar r = rng.poly_scalar(*vs, 2, false);
    CHECK((p * r) / (q * r) == p / q);
  }
}

TEST_CASE("derivatives: power, quotient and parameter rules") {
  auto vs = vars2();
  CHECK(S("x1^2*x2", *vs).derive(0) == S("2*x1*x2", *vs));
  auto vx = make_varset({"x"});
  CHECK(S("1/x", *vx).derive(0) == S("-1/x^2", *vx));
  auto vt = vars_xt();
  CHECK(S("t1*x + x^2", *vt).derive(0) == S("t1 + 2*x", *vt));
  // parameters are never differentiated by base derivatives
  CHECK(S("t1^3", *vt).derive(0).is_zero());
}

TEST_CASE("derive is linear and Leibniz on random products") {
  auto vs = vars2();
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    Scalar f = rng.poly_scalar(*vs, 3);
    Scalar g = rng.poly_scalar(*vs, 3);
    for (int v = 0; v < 2; ++v) {
      CHECK((f + g).derive(v) == f.derive(v) + g.derive(v));
      CHECK((f * g).derive(v) == f.derive(v) * g + f * g.derive(v));
    }
  }
  // rational case
  Scalar f = S("(x1+x2)/(x1-x2)", *vs);
  Scalar g = S("x1*x2", *vs);
  CHECK((f * g).derive(1) == f.derive(1) * g + f * g.derive(1));
}

TEST_CASE("vector fields act as derivations") {
  auto vs = vars2();
  VectorField v = VectorField::zero(*vs);
  v.comp[0] = S("x2", *vs);
  CHECK(v.apply(S("x1", *vs)) == S("x2", *vs));
  CHECK(VectorField::zero(*vs).apply(S("x1*x2^2", *vs)).is_zero());
  VectorField w = VectorField::zero(*vs);
  w.comp[0] = Scalar::one(vs->width());
  w.comp[1] = Scalar::one(vs->width());
  CHECK(w.apply(S("x1*x2", *vs)) == S("x1+x2", *vs));
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    VectorField u = VectorField::zero(*vs);
    u.comp[0] = rng.poly_scalar(*vs, 2);
    u.comp[1] = rng.poly_scalar(*vs, 2);
    Scalar f = rng.poly_scalar(*vs, 2);
    Scalar g = rng.poly_scalar(*vs, 2);
    CHECK(u.apply(f * g) == u.apply(f) * g + f * u.apply(g));
  }
}

TEST_CASE("commutator of vector fields") {
  auto vs = vars2();
  // [f d1, g d2] = f (d1 g) d2 - g (d2 f) d1
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    Scalar f = rng.poly_scalar(*vs, 2);
    Scalar g = rng.poly_scalar(*vs, 2);
    VectorField a = VectorField::zero(*vs), b = VectorField::zero(*vs);
    a.comp[0] = f;
    b.comp[1] = g;
    VectorField c = commutator(a, b);
    CHECK(c.comp[1] == f * g.derive(0));
    CHECK(c.comp[0] == -(g * f.derive(1)));
  }
}

TEST_CASE("parser round trips with the printer") {
  auto vs = vars_xt();
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    Scalar num = rng.poly_scalar(*vs, 3);
    Scalar den = rng.poly_scalar(*vs, 3, false);
    Scalar s = num / den;
    CHECK(parse_scalar(to_string(s, *vs), *vs) == s);
  }
  CHECK(to_string(S("x1^2*x2/2", *vars2()), *vars2()) == "1/2*x1^2*x2");
}

TEST_CASE("parser errors carry positions and names") {
  auto vs = vars2();
  CHECK_THROWS_AS(S("x1 + y7", *vs), UnknownVariable);
  CHECK_THROWS_AS(S("x1 + ", *vs), ParseError);
  CHECK_THROWS_AS(S("(x1", *vs), ParseError);
  CHECK_THROWS_AS(S("x1 ^ x2", *vs), ParseError);
  try {
    S("x1 + + + )", *vs);
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
  }
}

TEST_CASE("degree guard rejects runaway products") {
  auto vs = make_varset({"x"});
  int old = degree_limit();
  set_degree_limit(8);
  Scalar x = S("x", *vs);
  CHECK_THROWS_AS(x.pow(9), DegreeOverflow);
  set_degree_limit(old);
  CHECK(x.pow(9) == S("x^9", *vs));
}

TEST_CASE("widening embeds scalars into extended varsets") {
  auto vs = make_varset({"x1"});
  VarSet ext = vs->with_extra_params(2);
  CHECK(ext.width() == 3);
  Scalar s = S("x1^2+1", *vs);
  Scalar w = s.widened(ext.width());
  CHECK(to_string(w, ext) == "x1^2 + 1");
  CHECK(ext.param[0] == "t0");
}
