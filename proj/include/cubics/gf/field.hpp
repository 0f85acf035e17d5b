#pragma once

// Exact arithmetic in a finite field F_{p^k} = F_p[t]/(m(t)).
//
// Elements are stored as their *code*: the coefficient vector (c_0, ..., c_{k-1})
// of the reduced representative c_0 + c_1 t + ... + c_{k-1} t^{k-1}, read as the
// base-p integer sum c_i p^i. The code is also the element's position in the
// canonical enumeration order (c_0 varies fastest), so iterating codes
// 0 .. size()-1 visits every element exactly once.
//
// Fields up to 2^20 elements carry exp/log/Zech tables; fields up to 2^8
// additionally carry dense add/mul tables. Above 2^20 all arithmetic goes
// through polynomial multiplication with reduction by the modulus.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubics::gf {

struct Elem {
  std::uint64_t code = 0;

  constexpr bool is_zero() const { return code == 0; }
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldOptions {
  std::uint64_t max_size = std::uint64_t{1} << 40;
  std::uint64_t table_limit = std::uint64_t{1} << 20;
  std::uint64_t dense_limit = 256;
  bool use_tables = true;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // F_{p^k} with the lexicographically smallest monic irreducible modulus of
  // degree k (ordered by the code of its lower coefficients). For k == 1 the
  // modulus is t.
  static FieldPtr make(std::uint64_t p, unsigned k, const FieldOptions& opts = {});

  // F_p[t]/(modulus) for an explicit monic modulus given as k+1 coefficients,
  // constant term first. Irreducibility is checked by trial division.
  static FieldPtr with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus,
                               const FieldOptions& opts = {});

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t size() const { return size_; }
  std::span<const std::uint64_t> modulus() const { return modulus_; }
  bool table_mode() const { return !exp_.empty(); }
  bool dense_mode() const { return !dense_add_.empty(); }

  // Structural identity: same p and same modulus.
  bool same_as(const Field& other) const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  // Image of an integer in the prime subfield; negative values wrap mod p.
  Elem from_int(std::int64_t v) const;
  // Element with the given code; throws if code >= size().
  Elem element(std::uint64_t code) const;
  Elem from_digits(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> digits(Elem a) const;
  bool in_prime_field(Elem a) const { return a.code < p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws std::domain_error on zero
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;

  // Reference arithmetic that never touches the tables.
  Elem add_poly(Elem a, Elem b) const;
  Elem mul_poly(Elem a, Elem b) const;
  Elem inv_poly(Elem a) const;
  Elem pow_poly(Elem a, std::uint64_t e) const;

  // Smallest-code primitive element of the multiplicative group.
  Elem generator() const { return generator_; }
  // Prime factors of size()-1.
  std::span<const std::uint64_t> group_order_factors() const { return order_factors_; }
  std::uint64_t multiplicative_order(Elem a) const;

  // Base-p digit string of the coefficient vector, least significant first.
  // Digits use 0-9a-z for p <= 36, and '.'-separated decimals otherwise.
  std::string encode(Elem a) const;
  Elem decode(std::string_view text) const;
  // (p, k, modulus digits) in the same digit syntax.
  std::string describe() const;

 private:
  Field(std::uint64_t p, std::vector<std::uint64_t> modulus, const FieldOptions& opts);

  void build_tables(const FieldOptions& opts);
  void find_generator();

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t size_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> order_factors_;
  Elem generator_{};

  // exp_ holds g^i for i in [0, 2(size-1)) so sums of two logs index directly.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // zech_[n] = log(1 + g^n), or kNoLog when 1 + g^n = 0.
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint16_t> dense_add_;
  std::vector<std::uint16_t> dense_mul_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// Returns (p, e) with q = p^e, or nullopt-like (0, 0) when q is not a prime power.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  explicit operator bool() const { return p != 0; }
};
PrimePower factor_prime_power(std::uint64_t q);
std::uint64_t ipow(std::uint64_t base, unsigned e);

// Polynomial helpers over F_p, coefficient vectors constant term first.
namespace poly {
// Remainder of a modulo monic b; result has degree < deg b (trailing zeros trimmed).
std::vector<std::uint64_t> rem(std::vector<std::uint64_t> a, std::span<const std::uint64_t> b,
                               std::uint64_t p);
bool is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p);
}  // namespace poly

// Value-type element bound to its field; arithmetic checks that both operands
// belong to the same field.
class FieldElem {
 public:
  FieldElem(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::uint64_t code() const { return value_.code; }
  bool is_zero() const { return value_.is_zero(); }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const;

  bool operator==(const FieldElem& o) const;
  std::string to_string() const { return field_->encode(value_); }

 private:
  void check_same(const FieldElem& o) const;

  FieldPtr field_;
  Elem value_;
};

}  // namespace cubics::gf
