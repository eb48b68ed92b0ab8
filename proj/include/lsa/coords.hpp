#pragma once

#include <string>
#include <vector>

#include "lsa/scalar.hpp"

namespace lsa {

/// Coordinate vector in a fixed frame. Sections of A live in the basis
/// e1..er, covectors in the dual basis eps1..epsr; both are plain coordinate
/// vectors and pair via pairing().
struct Coords {
  std::vector<Scalar> c;

  Coords() = default;
  Coords(int rank, int width) : c(rank, Scalar::zero(width)) {}

  static Coords basis(int rank, int i, int width) {
    Coords out(rank, width);
    out.c[i] = Scalar::one(width);
    return out;
  }

  int rank() const { return static_cast<int>(c.size()); }
  int width() const { return c.empty() ? 0 : c[0].width(); }
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }

  Coords operator+(const Coords& o) const;
  Coords operator-(const Coords& o) const;
  Coords operator-() const;
  Coords scaled(const Scalar& f) const;
  Coords& operator+=(const Coords& o);
  Coords& operator-=(const Coords& o);
  bool operator==(const Coords& o) const { return c == o.c; }
  bool operator!=(const Coords& o) const { return !(*this == o); }

  Coords widened(int new_width) const;
};

using Section = Coords;
using Covector = Coords;

/// Canonical pairing <xi, x> = sum_i xi_i x_i.
Scalar pairing(const Coords& xi, const Coords& x);

/// Renders e.g. "e1 - x1*e2" with the given basis symbol ("e" or "eps").
std::string to_string(const Coords& v, const VarSet& vars, const std::string& sym);

}  // namespace lsa
