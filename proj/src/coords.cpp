#include "lsa/coords.hpp"

#include <cassert>

#include "lsa/rng.hpp"

namespace lsa {

Coords Coords::operator+(const Coords& o) const {
  if (rank() != o.rank()) throw ShapeMismatch("coordinate ranks differ");
  Coords out = *this;
  for (int i = 0; i < rank(); ++i) out.c[i] += o.c[i];
  return out;
}

Coords Coords::operator-(const Coords& o) const {
  if (rank() != o.rank()) throw ShapeMismatch("coordinate ranks differ");
  Coords out = *this;
  for (int i = 0; i < rank(); ++i) out.c[i] -= o.c[i];
  return out;
}

Coords Coords::operator-() const {
  Coords out = *this;
  for (auto& x : out.c) x = -x;
  return out;
}

Coords Coords::scaled(const Scalar& f) const {
  Coords out = *this;
  for (auto& x : out.c) x *= f;
  return out;
}

Coords& Coords::operator+=(const Coords& o) { return *this = *this + o; }
Coords& Coords::operator-=(const Coords& o) { return *this = *this - o; }

Coords Coords::widened(int new_width) const {
  Coords out = *this;
  for (auto& x : out.c) x = x.widened(new_width);
  return out;
}

Scalar pairing(const Coords& xi, const Coords& x) {
  if (xi.rank() != x.rank()) throw ShapeMismatch("pairing ranks differ");
  Scalar acc = Scalar::zero(xi.width() ? xi.width() : x.width());
  for (int i = 0; i < xi.rank(); ++i) {
    if (xi.c[i].is_zero() || x.c[i].is_zero()) continue;
    acc += xi.c[i] * x.c[i];
  }
  return acc;
}

std::string to_string(const Coords& v, const VarSet& vars, const std::string& sym) {
  std::string out;
  for (int i = 0; i < v.rank(); ++i) {
    if (v.c[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (v.c[i].is_one())
      out += sym + std::to_string(i + 1);
    else
      out += "(" + to_string(v.c[i], vars) + ")*" + sym + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

Scalar Rng::poly_scalar(const VarSet& vars, int max_deg, bool allow_zero) {
  Poly p(vars.width());
  int terms = uniform(1, 3);
  for (int t = 0; t < terms; ++t) {
    Mono m(vars.width());
    int deg = uniform(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      if (vars.nbase() == 0) break;
      m.e[uniform(0, vars.nbase() - 1)] += 1;
    }
    p.add_term(m, small_rational());
  }
  if (!allow_zero && p.is_zero()) p.add_term(Mono(vars.width()), 1);
  return Scalar(p);
}

Coords Rng::coords(const VarSet& vars, int rank, int max_deg) {
  Coords out(rank, vars.width());
  for (int i = 0; i < rank; ++i) out.c[i] = poly_scalar(vars, max_deg);
  return out;
}

}  // namespace lsa
