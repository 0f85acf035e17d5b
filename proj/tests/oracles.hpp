#pragma once

// Naive reference implementations used to cross-check the library.
// Polynomial arithmetic here is self-contained; the form-level helpers use
// only Field::add/mul/neg/inv, which are themselves checked against RefField.

#include <cstdint>
#include <vector>

#include "cubics/forms.hpp"
#include "cubics/gf/field.hpp"

namespace oracle {

using Poly = std::vector<std::int64_t>;  // constant term first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  for (auto& c : a) c = ((c % p) + p) % p;
  trim(a);
  const std::size_t dm = m.size() - 1;
  std::int64_t lead_inv = 1;
  while (lead_inv * m.back() % p != 1) ++lead_inv;
  while (a.size() > dm) {
    const std::int64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - factor * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline bool poly_divides(const Poly& d, const Poly& a, std::int64_t p) { return poly_mod(a, d, p).empty(); }

// Irreducible iff no monic polynomial of degree 1 .. deg/2 divides it.
inline bool brute_irreducible(const Poly& f, std::int64_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::int64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::int64_t c = 0; c < count; ++c) {
      Poly g(d + 1);
      std::int64_t rest = c;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      g[d] = 1;
      if (poly_divides(g, f, p)) return false;
    }
  }
  return true;
}

// F_p[t]/(m) with elements as coefficient vectors, schoolbook products.
class RefField {
 public:
  RefField(std::int64_t p, Poly modulus) : p_(p), m_(std::move(modulus)), k_(m_.size() - 1) {
    size_ = 1;
    for (std::size_t i = 0; i < k_; ++i) size_ *= static_cast<std::uint64_t>(p_);
  }

  std::uint64_t size() const { return size_; }

  Poly from_code(std::uint64_t code) const {
    Poly a(k_);
    for (auto& c : a) {
      c = static_cast<std::int64_t>(code % p_);
      code /= p_;
    }
    return a;
  }
  std::uint64_t to_code(Poly a) const {
    a.resize(k_, 0);
    std::uint64_t code = 0;
    for (std::size_t i = k_; i-- > 0;) code = code * p_ + static_cast<std::uint64_t>(((a[i] % p_) + p_) % p_);
    return code;
  }
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    Poly a = from_code(x), b = from_code(y);
    for (std::size_t i = 0; i < k_; ++i) a[i] += b[i];
    return to_code(a);
  }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    const Poly a = from_code(x), b = from_code(y);
    Poly c(2 * k_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) c[i + j] += a[i] * b[j];
    return to_code(poly_mod(c, m_, p_));
  }
  std::uint64_t pow(std::uint64_t x, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

 private:
  std::int64_t p_;
  Poly m_;
  std::size_t k_;
  std::uint64_t size_;
};

inline Poly modulus_of(const cubics::gf::Field& f) {
  Poly m;
  for (auto c : f.modulus()) m.push_back(static_cast<std::int64_t>(c));
  return m;
}

// Cubic value by expanding every monomial as a product of coordinates.
inline cubics::gf::Elem eval_cubic(const cubics::forms::CubicForm& F, const std::array<cubics::gf::Elem, 3>& P) {
  const auto& f = F.f();
  cubics::gf::Elem acc = f.zero();
  for (std::size_t m = 0; m < 10; ++m) {
    cubics::gf::Elem term = F[m];
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < cubics::forms::kCubicMonomials[m][v]; ++e) term = f.mul(term, P[v]);
    acc = f.add(acc, term);
  }
  return acc;
}

// L | F iff F restricted to {L = 0} is the zero binary cubic. The pivot
// variable (first nonzero coefficient of L) is eliminated and every monomial
// is expanded as a product of binary linear forms in the two free variables.
inline bool line_divides_by_expansion(const cubics::forms::LinearForm& L, const cubics::forms::CubicForm& F) {
  using cubics::gf::Elem;
  const auto& f = F.f();
  int pivot = 0;
  while (L[pivot].is_zero()) ++pivot;
  int u = -1, w = -1;
  for (int i = 0; i < 3; ++i)
    if (i != pivot) (u < 0 ? u : w) = i;
  const Elem inv = f.inv(L[pivot]);
  // Each variable as (coefficient of u, coefficient of w).
  std::array<std::array<Elem, 2>, 3> var{};
  var[u] = {f.one(), f.zero()};
  var[w] = {f.zero(), f.one()};
  var[pivot] = {f.neg(f.mul(L[u], inv)), f.neg(f.mul(L[w], inv))};
  std::array<Elem, 4> total{};
  for (std::size_t m = 0; m < 10; ++m) {
    std::vector<Elem> prod = {F[m]};
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < cubics::forms::kCubicMonomials[m][v]; ++e) {
        std::vector<Elem> next(prod.size() + 1, f.zero());
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i] = f.add(next[i], f.mul(prod[i], var[v][0]));
          next[i + 1] = f.add(next[i + 1], f.mul(prod[i], var[v][1]));
        }
        prod = next;
      }
    for (std::size_t i = 0; i < 4; ++i) total[i] = f.add(total[i], prod[i]);
  }
  for (auto c : total)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace oracle
