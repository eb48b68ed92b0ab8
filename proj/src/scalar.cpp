#include "lsa/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cctype>
#include <sstream>

namespace lsa {

// ---------------------------------------------------------------------------
// VarSet

std::optional<int> VarSet::index_of(const std::string& name) const {
  for (size_t i = 0; i < base.size(); ++i)
    if (base[i] == name) return static_cast<int>(i);
  for (size_t i = 0; i < param.size(); ++i)
    if (param[i] == name) return static_cast<int>(base.size() + i);
  return std::nullopt;
}

const std::string& VarSet::name_of(int idx) const {
  if (idx < nbase()) return base[idx];
  return param[idx - nbase()];
}

VarSet VarSet::with_extra_params(int extra) const {
  VarSet out = *this;
  int counter = 0;
  for (int k = 0; k < extra; ++k) {
    std::string name;
    do {
      name = "t" + std::to_string(counter++);
    } while (out.index_of(name).has_value());
    out.param.push_back(name);
  }
  return out;
}

VarSetPtr make_varset(std::vector<std::string> base, std::vector<std::string> param) {
  auto vs = std::make_shared<VarSet>();
  vs->base = std::move(base);
  vs->param = std::move(param);
  return vs;
}

// ---------------------------------------------------------------------------
// Degree guard

namespace {
std::atomic<int> g_degree_limit{64};
}

int degree_limit() { return g_degree_limit.load(); }
void set_degree_limit(int limit) { g_degree_limit.store(limit); }

// ---------------------------------------------------------------------------
// Mono

int Mono::total() const {
  int t = 0;
  for (int k : e) t += k;
  return t;
}

bool Mono::divides(const Mono& other) const {
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

Mono Mono::operator*(const Mono& other) const {
  Mono out = *this;
  for (size_t i = 0; i < e.size(); ++i) out.e[i] += other.e[i];
  return out;
}

Mono Mono::quotient(const Mono& other) const {
  Mono out = *this;
  for (size_t i = 0; i < e.size(); ++i) out.e[i] -= other.e[i];
  return out;
}

bool MonoGrlexGreater::operator()(const Mono& a, const Mono& b) const {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta > tb;
  // lexicographic with earlier variables more significant
  return a.e > b.e;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(int width, const mpq_class& c) {
  Poly p(width);
  if (c != 0) p.terms_.emplace(Mono(width), c);
  return p;
}

Poly Poly::variable(int width, int idx) {
  Poly p(width);
  Mono m(width);
  m.e[idx] = 1;
  p.terms_.emplace(m, mpq_class(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.total() == 0 &&
         terms_.begin()->second == 1;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total();  // leading term has max total degree
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
  return d;
}

const Mono& Poly::leading_mono() const {
  assert(!terms_.empty());
  return terms_.begin()->first;
}

const mpq_class& Poly::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.begin()->second;
}

mpq_class Poly::constant_term() const {
  Mono unit(width_);
  auto it = terms_.find(unit);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Poly::add_term(const Mono& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  assert(width_ == o.width_);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  assert(width_ == o.width_);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(width_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  assert(width_ == o.width_);
  if (is_zero() || o.is_zero()) return Poly(width_);
  int deg = total_degree() + o.total_degree();
  if (deg > degree_limit()) throw DegreeOverflow(deg, degree_limit());
  Poly out(width_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly out(width_);
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Poly Poly::pow(int k) const {
  assert(k >= 0);
  Poly acc = Poly::one(width_);
  Poly b = *this;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

Poly Poly::derivative(int var) const {
  Poly out(width_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == 0) continue;
    Mono d = m;
    d.e[var] -= 1;
    out.add_term(d, c * m.e[var]);
  }
  return out;
}

Poly Poly::widened(int new_width) const {
  assert(new_width >= width_);
  Poly out(new_width);
  for (const auto& [m, c] : terms_) {
    Mono mm(new_width);
    std::copy(m.e.begin(), m.e.end(), mm.e.begin());
    out.terms_.emplace(mm, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// gcd machinery

namespace {

// rational content: p / rat_content(p) has coprime integer coefficients and a
// positive leading coefficient
mpq_class rat_content(const Poly& p) {
  assert(!p.is_zero());
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_class n = c.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading_coeff() < 0) content = -content;
  return content;
}

Poly int_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpq_class c = rat_content(p);
  return p.scaled(1 / c);
}

std::vector<int> active_vars(const Poly& p) {
  std::vector<bool> seen(p.width(), false);
  for (const auto& [m, c] : p.terms())
    for (int v = 0; v < p.width(); ++v)
      if (m.e[v] > 0) seen[v] = true;
  std::vector<int> out;
  for (int v = 0; v < p.width(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

// coefficient of v^k, with v's exponent zeroed out
Poly coeff_in(const Poly& p, int v, int k) {
  Poly out(p.width());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[v] != k) continue;
    Mono mm = m;
    mm.e[v] = 0;
    out.add_term(mm, c);
  }
  return out;
}

Poly mul_var_pow(const Poly& p, int v, int k) {
  Poly out(p.width());
  for (const auto& [m, c] : p.terms()) {
    Mono mm = m;
    mm.e[v] += k;
    out.add_term(mm, c);
  }
  return out;
}

Poly prim_gcd(const Poly& a, const Poly& b);

// gcd of the v-coefficients
Poly content_in(const Poly& p, int v) {
  Poly acc = Poly::zero(p.width());
  for (int k = 0; k <= p.degree_in(v); ++k) {
    Poly c = coeff_in(p, v, k);
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? int_primitive(c) : prim_gcd(acc, c);
    if (c.is_one()) break;  // content can only be a unit from here on
  }
  return acc;
}

// pseudo-remainder of f by g in the variable v (deg_v g >= 1)
Poly prem(Poly f, const Poly& g, int v) {
  int dg = g.degree_in(v);
  Poly lcg = coeff_in(g, v, dg);
  int df;
  while (!f.is_zero() && (df = f.degree_in(v)) >= dg) {
    Poly lcf = coeff_in(f, v, df);
    f = f * lcg - mul_var_pow(lcf * g, v, df - dg);
  }
  return f;
}

// gcd of integer-primitive polynomials, up to sign
Poly prim_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) {
    // primitive constants are +-1
    if (a.is_constant() && b.is_constant()) return Poly::one(a.width());
    return Poly::one(a.width());
  }
  std::vector<int> va = active_vars(a), vb = active_vars(b);
  int v = std::max(va.back(), vb.back());
  bool in_a = std::find(va.begin(), va.end(), v) != va.end();
  bool in_b = std::find(vb.begin(), vb.end(), v) != vb.end();
  // a common divisor cannot involve a variable absent from one operand
  if (!in_a) return prim_gcd(a, content_in(b, v));
  if (!in_b) return prim_gcd(content_in(a, v), b);

  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = prim_gcd(ca, cb);
  Poly f = divide_exact(a, ca), g = divide_exact(b, cb);
  if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
  // primitive Euclidean sequence in v
  while (true) {
    int dgv = g.degree_in(v);
    if (dgv == 0) return c;  // v-free divisor of a v-primitive poly is a unit
    Poly r = prem(f, g, v);
    if (r.is_zero()) break;
    f = g;
    Poly cr = content_in(r, v);
    g = divide_exact(r, cr);
  }
  return int_primitive(c * g);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  assert(a.width() == b.width());
  if (a.is_zero()) return b.is_zero() ? a : int_primitive(b);
  if (b.is_zero()) return int_primitive(a);
  Poly g = prim_gcd(int_primitive(a), int_primitive(b));
  if (g.leading_coeff() < 0) g = -g;
  return g;
}

Poly divide_exact(const Poly& a, const Poly& b) {
  assert(a.width() == b.width());
  assert(!b.is_zero());
  if (a.is_zero()) return a;
  if (b.is_one()) return a;
  Poly r = a;
  Poly q(a.width());
  const Mono& ltb = b.leading_mono();
  const mpq_class& lcb = b.leading_coeff();
  while (!r.is_zero()) {
    const Mono& ltr = r.leading_mono();
    if (!ltb.divides(ltr)) throw std::logic_error("divide_exact: not an exact multiple");
    Mono qm = ltr.quotient(ltb);
    mpq_class qc = r.leading_coeff() / lcb;
    Poly piece(a.width());
    piece.add_term(qm, qc);
    q = q + piece;
    r = r - piece * b;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(Poly num) : num_(std::move(num)), den_(Poly::one(num_.width())) {
  canonicalize();
}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  assert(num_.width() == den_.width());
  if (den_.is_zero()) throw DivisionByZero();
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::one(num_.width());
    return;
  }
  if (!den_.is_one()) {
    Poly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  mpq_class lc = den_.leading_coeff();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  assert(width() == o.width());
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) {
    Scalar out(width());
    out.num_ = num_ + o.num_;
    if (out.num_.is_zero()) return Scalar::zero(width());
    return out;
  }
  Poly g = poly_gcd(den_, o.den_);
  Poly db = divide_exact(o.den_, g);
  Poly da = divide_exact(den_, g);
  return Scalar(num_ * db + o.num_ * da, den_ * db);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.num_ = -out.num_;
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  assert(width() == o.width());
  if (is_zero() || o.is_zero()) return Scalar::zero(width());
  // cross-reduce so the product of reduced fractions stays reduced
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  Poly n = divide_exact(num_, g1) * divide_exact(o.num_, g2);
  Poly d = divide_exact(den_, g2) * divide_exact(o.den_, g1);
  Scalar out(width());
  out.num_ = std::move(n);
  out.den_ = std::move(d);
  mpq_class lc = out.den_.leading_coeff();
  if (lc != 1) {
    out.num_ = out.num_.scaled(1 / lc);
    out.den_ = out.den_.scaled(1 / lc);
  }
  return out;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar out(width());
  out.num_ = den_;
  out.den_ = num_;
  mpq_class lc = out.den_.leading_coeff();
  if (lc != 1) {
    out.num_ = out.num_.scaled(1 / lc);
    out.den_ = out.den_.scaled(1 / lc);
  }
  return out;
}

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar acc = Scalar::one(width());
  Scalar b = *this;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

Scalar Scalar::derive(int var) const {
  if (den_.is_one()) {
    Scalar out(width());
    out.num_ = num_.derivative(var);
    return out;
  }
  // quotient rule
  Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return Scalar(std::move(n), den_ * den_);
}

Scalar Scalar::widened(int new_width) const {
  Scalar out(new_width);
  out.num_ = num_.widened(new_width);
  out.den_ = den_.widened(new_width);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string mono_string(const Mono& m, const VarSet& vars) {
  std::string out;
  for (int v = 0; v < m.width(); ++v) {
    if (m.e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.name_of(v);
    if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& p, const VarSet& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    mpq_class a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string ms = mono_string(m, vars);
    if (ms.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += ms;
    } else {
      out += a.get_str() + "*" + ms;
    }
  }
  return out;
}

std::string to_string(const Scalar& s, const VarSet& vars) {
  if (s.is_polynomial()) return to_string(s.num(), vars);
  return "(" + to_string(s.num(), vars) + ")/(" + to_string(s.den(), vars) + ")";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  const std::string& text;
  const VarSet& vars;
  size_t pos = 0;

  Parser(const std::string& t, const VarSet& v) : text(t), vars(v) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Scalar parse_expr() {
    Scalar acc = parse_term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc = acc + parse_term();
      } else if (c == '-') {
        ++pos;
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Scalar parse_term() {
    Scalar acc = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * parse_factor();
      } else if (c == '/') {
        ++pos;
        acc = acc / parse_factor();
      } else {
        return acc;
      }
    }
  }

  Scalar parse_factor() {
    if (accept('-')) return -parse_factor();
    if (accept('+')) return parse_factor();
    Scalar base = parse_primary();
    while (peek() == '^') {
      ++pos;
      int k = parse_nat();
      base = base.pow(k);
    }
    return base;
  }

  int parse_nat() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected nonnegative integer exponent", start);
    long v = std::stol(text.substr(start, pos - start));
    if (v > 1000) throw ParseError("exponent too large", start);
    return static_cast<int>(v);
  }

  Scalar parse_primary() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Scalar inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      mpz_class v(text.substr(start, pos - start));
      return Scalar::constant(vars.width(), mpq_class(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      auto idx = vars.index_of(name);
      if (!idx) throw UnknownVariable(name);
      return Scalar::variable(vars.width(), *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text, const VarSet& vars) {
  Parser p(text, vars);
  Scalar out = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return out;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::zero(const VarSet& vars) {
  VectorField v;
  v.comp.assign(vars.nbase(), Scalar::zero(vars.width()));
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& c : comp)
    if (!c.is_zero()) return false;
  return true;
}

Scalar VectorField::apply(const Scalar& f) const {
  if (comp.empty()) return f.is_zero() ? f : Scalar::zero(f.width());
  Scalar acc = Scalar::zero(comp[0].width());
  for (size_t mu = 0; mu < comp.size(); ++mu) {
    if (comp[mu].is_zero()) continue;
    acc += comp[mu] * f.derive(static_cast<int>(mu));
  }
  return acc;
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (comp.size() != o.comp.size()) throw ShapeMismatch("vector field dimensions differ");
  VectorField out = *this;
  for (size_t i = 0; i < comp.size(); ++i) out.comp[i] += o.comp[i];
  return out;
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (comp.size() != o.comp.size()) throw ShapeMismatch("vector field dimensions differ");
  VectorField out = *this;
  for (size_t i = 0; i < comp.size(); ++i) out.comp[i] -= o.comp[i];
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& c : out.comp) c = -c;
  return out;
}

VectorField VectorField::scaled(const Scalar& f) const {
  VectorField out = *this;
  for (auto& c : out.comp) c *= f;
  return out;
}

VectorField commutator(const VectorField& v, const VectorField& w) {
  if (v.comp.size() != w.comp.size()) throw ShapeMismatch("vector field dimensions differ");
  VectorField out = v;
  for (size_t mu = 0; mu < v.comp.size(); ++mu) {
    Scalar acc = Scalar::zero(v.comp[mu].width());
    for (size_t nu = 0; nu < v.comp.size(); ++nu) {
      acc += v.comp[nu] * w.comp[mu].derive(static_cast<int>(nu));
      acc -= w.comp[nu] * v.comp[mu].derive(static_cast<int>(nu));
    }
    out.comp[mu] = acc;
  }
  return out;
}

std::string to_string(const VectorField& v, const VarSet& vars) {
  std::string out;
  for (size_t mu = 0; mu < v.comp.size(); ++mu) {
    if (v.comp[mu].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(v.comp[mu], vars) + ")*d/d" + vars.base[mu];
  }
  return out.empty() ? "0" : out;
}

}  // namespace lsa
