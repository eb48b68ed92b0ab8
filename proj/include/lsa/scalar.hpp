#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsa/errors.hpp"

namespace lsa {

/// Symbol table: base variables x1..xn (differentiable) followed by generic
/// parameters t1..tm (constants under base derivatives). A Scalar's exponent
/// vectors have width nbase + nparam; all scalars combined in one expression
/// must share the same width.
struct VarSet {
  std::vector<std::string> base;
  std::vector<std::string> param;

  int nbase() const { return static_cast<int>(base.size()); }
  int nparam() const { return static_cast<int>(param.size()); }
  int width() const { return nbase() + nparam(); }

  std::optional<int> index_of(const std::string& name) const;
  const std::string& name_of(int idx) const;

  /// Same base variables, `extra` fresh parameters appended.
  VarSet with_extra_params(int extra) const;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> base,
                      std::vector<std::string> param = {});

/// Total-degree guard for intermediate polynomials (default 64).
int degree_limit();
void set_degree_limit(int limit);

/// Exponent vector under graded lexicographic order.
struct Mono {
  std::vector<int> e;

  explicit Mono(int width) : e(width, 0) {}
  int width() const { return static_cast<int>(e.size()); }
  int total() const;
  bool divides(const Mono& other) const;
  Mono operator*(const Mono& other) const;
  Mono quotient(const Mono& other) const;
  bool operator==(const Mono& other) const { return e == other.e; }
};

/// Strict "greater-than" in grlex so that map iteration starts at the leading
/// monomial.
struct MonoGrlexGreater {
  bool operator()(const Mono& a, const Mono& b) const;
};

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  explicit Poly(int width) : width_(width) {}
  static Poly zero(int width) { return Poly(width); }
  static Poly constant(int width, const mpq_class& c);
  static Poly one(int width) { return constant(width, 1); }
  static Poly variable(int width, int idx);

  int width() const { return width_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;

  const std::map<Mono, mpq_class, MonoGrlexGreater>& terms() const { return terms_; }
  const Mono& leading_mono() const;
  const mpq_class& leading_coeff() const;
  mpq_class constant_term() const;

  void add_term(const Mono& m, const mpq_class& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(int k) const;
  Poly derivative(int var) const;
  Poly widened(int new_width) const;

  bool operator==(const Poly& o) const {
    return width_ == o.width_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  int width_;
  std::map<Mono, mpq_class, MonoGrlexGreater> terms_;
};

/// gcd up to a rational unit; result is integer-primitive with positive
/// leading coefficient (1 for coprime inputs).
Poly poly_gcd(const Poly& a, const Poly& b);

/// Quotient of an exact multiple; throws std::logic_error otherwise.
Poly divide_exact(const Poly& a, const Poly& b);

/// Element of the fraction field Q(x1..xn; t1..tm). Canonical form: reduced
/// fraction, denominator monic under grlex, zero stored as 0/1. Equality is
/// structural.
class Scalar {
 public:
  explicit Scalar(int width) : num_(Poly::zero(width)), den_(Poly::one(width)) {}
  Scalar(Poly num, Poly den);
  explicit Scalar(Poly num);

  static Scalar zero(int width) { return Scalar(width); }
  static Scalar one(int width) { return Scalar(Poly::one(width)); }
  static Scalar constant(int width, const mpq_class& c) {
    return Scalar(Poly::constant(width, c));
  }
  static Scalar variable(int width, int idx) {
    return Scalar(Poly::variable(width, idx));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int width() const { return num_.width(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(int k) const;

  /// Partial derivative by symbol index (base variables live at 0..nbase-1).
  Scalar derive(int var) const;

  Scalar widened(int new_width) const;

  bool operator==(const Scalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  void canonicalize();
  Poly num_, den_;
};

/// Parses the expression grammar (rational literals, declared names,
/// + - * / ^ with nonnegative integer exponents, parentheses).
Scalar parse_scalar(const std::string& text, const VarSet& vars);

std::string to_string(const Poly& p, const VarSet& vars);
std::string to_string(const Scalar& s, const VarSet& vars);

/// Coefficients of a vector field sum(v_mu d/dx_mu); length = vars.nbase().
struct VectorField {
  std::vector<Scalar> comp;

  static VectorField zero(const VarSet& vars);
  int size() const { return static_cast<int>(comp.size()); }
  bool is_zero() const;

  /// Derivation action sum(v_mu * df/dx_mu).
  Scalar apply(const Scalar& f) const;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField scaled(const Scalar& f) const;
  bool operator==(const VectorField& o) const { return comp == o.comp; }
};

/// Commutator of derivations [v,w](f) = v(w(f)) - w(v(f)).
VectorField commutator(const VectorField& v, const VectorField& w);

std::string to_string(const VectorField& v, const VarSet& vars);

}  // namespace lsa
