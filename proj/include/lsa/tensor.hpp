#pragma once

#include <map>
#include <string>
#include <vector>

#include "lsa/coords.hpp"

namespace lsa {

/// Key of one stored tensor term: strictly increasing wedge indices plus the
/// tensor-slot index.
struct TensorKey {
  std::vector<int> wedge;
  int last = 0;

  bool operator<(const TensorKey& o) const {
    if (wedge != o.wedge) return wedge < o.wedge;
    return last < o.last;
  }
  bool operator==(const TensorKey& o) const {
    return wedge == o.wedge && last == o.last;
  }
};

/// Element of Gamma(wedge^n A (x) A) in basis coordinates, or of
/// Gamma(wedge^n A* (x) A*) in dual coordinates -- the representation does
/// not distinguish the two; the operations acting on it do. Degree 0 is a
/// plain Section/Covector. Only strictly increasing wedge tuples are stored;
/// evaluation on other orderings applies the permutation sign.
class Tensor {
 public:
  Tensor(int degree, int rank, int width)
      : degree_(degree), rank_(rank), width_(width) {}

  static Tensor from_coords(const Coords& v);        // degree 0
  Coords to_coords() const;                          // degree 0 only

  int degree() const { return degree_; }
  int rank() const { return rank_; }
  int width() const { return width_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<TensorKey, Scalar>& terms() const { return terms_; }

  /// Adds c * (basis wedge at idx | last); idx may be unsorted, duplicates
  /// annihilate, the sorting sign is absorbed into the coefficient.
  void add_term(std::vector<int> idx, int last, const Scalar& c);
  /// Signed coefficient at a possibly unsorted wedge tuple.
  Scalar coeff(std::vector<int> idx, int last) const;

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator-() const;
  Tensor scaled(const Scalar& f) const;
  bool operator==(const Tensor& o) const;

  /// Multilinear evaluation: wedge slots against args[0..n-1], tensor slot
  /// against last (all of the dual kind to the tensor's own frame).
  Scalar eval(const std::vector<Coords>& args, const Coords& last) const;

  Tensor widened(int new_width) const;

 private:
  int degree_, rank_, width_;
  std::map<TensorKey, Scalar> terms_;
};

using PolyTensor = Tensor;  // Gamma(wedge^n A (x) A)
using FormTensor = Tensor;  // Gamma(wedge^n A* (x) A*)

/// xi _| T : contraction of the first wedge slot, degree n -> n-1 (n >= 1).
Tensor contract_left(const Tensor& t, const Coords& xi);

/// Pure wedge-part coefficients of T |_ xi in Gamma(wedge^n A).
struct WedgeTensor {
  int degree = 0, rank = 0, width = 0;
  std::map<std::vector<int>, Scalar> terms;
  bool is_zero() const { return terms.empty(); }
};

/// T |_ xi : contraction of the tensor slot.
WedgeTensor contract_right(const Tensor& t, const Coords& xi);

/// (T |_ xi) (x) w, staying in the same carrier (degree n).
Tensor contract_right_tensor(const Tensor& t, const Coords& xi, const Coords& w);

/// Full diagonal pairing <phi, T> between dual carriers of equal degree.
Scalar tensor_pairing(const Tensor& phi, const Tensor& t);

/// alpha (x) beta as a degree-1 tensor (key (i|k) -> alpha_i beta_k).
Tensor tensor_product_1(const Coords& alpha, const Coords& beta);

std::string to_string(const Tensor& t, const VarSet& vars, const std::string& sym);

/// Fully antisymmetric k-form over the given frame, stored on strictly
/// increasing tuples. Used for the Lie-algebroid (de Rham type) complex.
struct AltForm {
  int degree = 0, rank = 0, width = 0;
  std::map<std::vector<int>, Scalar> terms;

  static AltForm zero(int degree, int rank, int width) {
    return AltForm{degree, rank, width, {}};
  }
  void add_term(std::vector<int> idx, const Scalar& c);
  Scalar coeff(std::vector<int> idx) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const AltForm& o) const {
    return degree == o.degree && terms == o.terms;
  }
};

/// Reads a degree-(k-1) tensor as an alternating k-form; throws
/// NotAlternating if the tensor slot breaks full antisymmetry.
AltForm altform_from_tensor(const Tensor& t);
Tensor tensor_from_altform(const AltForm& a);

std::string to_string(const AltForm& a, const VarSet& vars, const std::string& sym);

}  // namespace lsa
