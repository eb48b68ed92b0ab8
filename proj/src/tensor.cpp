#include "lsa/tensor.hpp"

#include <algorithm>
#include <cassert>

namespace lsa {

namespace {

/// Sorts idx ascending; returns 0 on repeated index, else the permutation
/// sign (+1/-1).
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j] <= idx[j - 1]; --j) {
      if (idx[j] == idx[j - 1]) return 0;
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

Tensor Tensor::from_coords(const Coords& v) {
  Tensor t(0, v.rank(), v.width());
  for (int k = 0; k < v.rank(); ++k)
    if (!v.c[k].is_zero()) t.terms_.emplace(TensorKey{{}, k}, v.c[k]);
  return t;
}

Coords Tensor::to_coords() const {
  assert(degree_ == 0);
  Coords out(rank_, width_);
  for (const auto& [key, c] : terms_) out.c[key.last] = c;
  return out;
}

void Tensor::add_term(std::vector<int> idx, int last, const Scalar& c) {
  assert(static_cast<int>(idx.size()) == degree_);
  if (c.is_zero()) return;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  TensorKey key{std::move(idx), last};
  Scalar add = (sign > 0) ? c : -c;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), add);
  } else {
    it->second += add;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar Tensor::coeff(std::vector<int> idx, int last) const {
  int sign = sort_sign(idx);
  if (sign == 0) return Scalar::zero(width_);
  auto it = terms_.find(TensorKey{idx, last});
  if (it == terms_.end()) return Scalar::zero(width_);
  return sign > 0 ? it->second : -it->second;
}

Tensor Tensor::operator+(const Tensor& o) const {
  assert(degree_ == o.degree_ && rank_ == o.rank_);
  Tensor out = *this;
  for (const auto& [key, c] : o.terms_) {
    auto it = out.terms_.find(key);
    if (it == out.terms_.end()) {
      out.terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

Tensor Tensor::operator-(const Tensor& o) const { return *this + (-o); }

Tensor Tensor::operator-() const {
  Tensor out(degree_, rank_, width_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

Tensor Tensor::scaled(const Scalar& f) const {
  Tensor out(degree_, rank_, width_);
  if (f.is_zero()) return out;
  for (const auto& [key, c] : terms_) {
    Scalar v = c * f;
    if (!v.is_zero()) out.terms_.emplace(key, v);
  }
  return out;
}

bool Tensor::operator==(const Tensor& o) const {
  return degree_ == o.degree_ && rank_ == o.rank_ && terms_ == o.terms_;
}

Scalar Tensor::eval(const std::vector<Coords>& args, const Coords& last) const {
  assert(static_cast<int>(args.size()) == degree_);
  Scalar acc = Scalar::zero(width_);
  for (const auto& [key, c] : terms_) {
    if (last.c[key.last].is_zero()) continue;
    // det of the pairing submatrix (wedge convention without 1/n!);
    // permutation expansion is fine at desk degree
    Scalar det = Scalar::one(width_);
    if (degree_ > 0) {
      det = Scalar::zero(width_);
      std::vector<int> p(degree_);
      for (int i = 0; i < degree_; ++i) p[i] = i;
      do {
        int sign = 1;
        for (int i = 0; i < degree_; ++i)
          for (int j = i + 1; j < degree_; ++j)
            if (p[i] > p[j]) sign = -sign;
        Scalar prod = Scalar::constant(width_, sign);
        bool zero = false;
        for (int i = 0; i < degree_; ++i) {
          const Scalar& v = args[p[i]].c[key.wedge[i]];
          if (v.is_zero()) {
            zero = true;
            break;
          }
          prod *= v;
        }
        if (!zero) det += prod;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    acc += c * det * last.c[key.last];
  }
  return acc;
}

Tensor Tensor::widened(int new_width) const {
  Tensor out(degree_, rank_, new_width);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, c.widened(new_width));
  return out;
}

Tensor contract_left(const Tensor& t, const Coords& xi) {
  if (t.degree() < 1) throw DegreeError("left contraction needs degree >= 1");
  if (xi.rank() != t.rank()) throw ShapeMismatch("contraction rank mismatch");
  Tensor out(t.degree() - 1, t.rank(), t.width());
  for (const auto& [key, c] : t.terms()) {
    for (size_t a = 0; a < key.wedge.size(); ++a) {
      const Scalar& v = xi.c[key.wedge[a]];
      if (v.is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(key.wedge.size() - 1);
      for (size_t b = 0; b < key.wedge.size(); ++b)
        if (b != a) rest.push_back(key.wedge[b]);
      Scalar coeff = c * v;
      if (a % 2 == 1) coeff = -coeff;
      out.add_term(std::move(rest), key.last, coeff);
    }
  }
  return out;
}

WedgeTensor contract_right(const Tensor& t, const Coords& xi) {
  if (xi.rank() != t.rank()) throw ShapeMismatch("contraction rank mismatch");
  WedgeTensor out{t.degree(), t.rank(), t.width(), {}};
  for (const auto& [key, c] : t.terms()) {
    const Scalar& v = xi.c[key.last];
    if (v.is_zero()) continue;
    Scalar add = c * v;
    auto it = out.terms.find(key.wedge);
    if (it == out.terms.end()) {
      out.terms.emplace(key.wedge, add);
    } else {
      it->second += add;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

Tensor contract_right_tensor(const Tensor& t, const Coords& xi, const Coords& w) {
  WedgeTensor mid = contract_right(t, xi);
  Tensor out(t.degree(), t.rank(), t.width());
  for (const auto& [wedge, c] : mid.terms)
    for (int k = 0; k < t.rank(); ++k) {
      if (w.c[k].is_zero()) continue;
      out.add_term(wedge, k, c * w.c[k]);
    }
  return out;
}

Scalar tensor_pairing(const Tensor& phi, const Tensor& t) {
  if (phi.degree() != t.degree() || phi.rank() != t.rank())
    throw ShapeMismatch("pairing of tensors of different shape");
  Scalar acc = Scalar::zero(phi.width());
  const auto& a = phi.terms();
  const auto& b = t.terms();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

Tensor tensor_product_1(const Coords& alpha, const Coords& beta) {
  Tensor out(1, alpha.rank(), alpha.width());
  for (int i = 0; i < alpha.rank(); ++i) {
    if (alpha.c[i].is_zero()) continue;
    for (int k = 0; k < beta.rank(); ++k) {
      if (beta.c[k].is_zero()) continue;
      out.add_term({i}, k, alpha.c[i] * beta.c[k]);
    }
  }
  return out;
}

std::string to_string(const Tensor& t, const VarSet& vars, const std::string& sym) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : t.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c, vars) + ")*";
    for (int i : key.wedge) out += sym + std::to_string(i + 1) + "^";
    out += "(x)" + sym + std::to_string(key.last + 1);
  }
  return out;
}

void AltForm::add_term(std::vector<int> idx, const Scalar& c) {
  assert(static_cast<int>(idx.size()) == degree);
  if (c.is_zero()) return;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  Scalar add = sign > 0 ? c : -c;
  auto it = terms.find(idx);
  if (it == terms.end()) {
    terms.emplace(std::move(idx), add);
  } else {
    it->second += add;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Scalar AltForm::coeff(std::vector<int> idx) const {
  int sign = sort_sign(idx);
  if (sign == 0) return Scalar::zero(width);
  auto it = terms.find(idx);
  if (it == terms.end()) return Scalar::zero(width);
  return sign > 0 ? it->second : -it->second;
}

AltForm altform_from_tensor(const Tensor& t) {
  AltForm out = AltForm::zero(t.degree() + 1, t.rank(), t.width());
  for (const auto& [key, c] : t.terms()) {
    if (std::find(key.wedge.begin(), key.wedge.end(), key.last) != key.wedge.end())
      throw NotAlternating("tensor-slot index repeats a wedge index");
    std::vector<int> full = key.wedge;
    full.push_back(key.last);
    Scalar existing = out.coeff(full);
    if (existing.is_zero()) {
      out.add_term(full, c);
    } else if (existing != c) {
      throw NotAlternating("inconsistent coefficients across slot permutations");
    }
  }
  // rebuilding must reproduce the input exactly, otherwise permuted storage
  // slots were missing
  if (!(tensor_from_altform(out) == t))
    throw NotAlternating("missing or mismatched permuted term");
  return out;
}

Tensor tensor_from_altform(const AltForm& a) {
  assert(a.degree >= 1);
  Tensor out(a.degree - 1, a.rank, a.width);
  for (const auto& [tuple, c] : a.terms) {
    for (size_t drop = 0; drop < tuple.size(); ++drop) {
      std::vector<int> wedge;
      for (size_t b = 0; b < tuple.size(); ++b)
        if (b != drop) wedge.push_back(tuple[b]);
      // sign of moving tuple[drop] past the trailing elements to the end
      int sign = ((tuple.size() - 1 - drop) % 2 == 0) ? 1 : -1;
      out.add_term(wedge, tuple[drop], sign > 0 ? c : -c);
    }
  }
  return out;
}

std::string to_string(const AltForm& a, const VarSet& vars, const std::string& sym) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [tuple, c] : a.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c, vars) + ")*";
    bool first = true;
    for (int i : tuple) {
      if (!first) out += "^";
      out += sym + std::to_string(i + 1);
      first = false;
    }
  }
  return out;
}

}  // namespace lsa
