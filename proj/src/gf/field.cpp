#include "cubics/gf/field.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cubics/error.hpp"

namespace cubics::gf {

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
constexpr unsigned kMaxDegree = 64;

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

char digit_char(std::uint64_t d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

std::uint64_t char_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint64_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<std::uint64_t>(c - 'A' + 10);
  throw std::invalid_argument(std::string("bad digit '") + c + "'");
}

std::string digits_to_string(std::span<const std::uint64_t> digits, std::uint64_t p) {
  std::string out;
  if (p <= 36) {
    for (auto d : digits) out.push_back(digit_char(d));
  } else {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out.push_back('.');
      out += std::to_string(digits[i]);
    }
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) return {};
  auto f = prime_factors(q);
  if (f.size() != 1) return {};
  unsigned e = 0;
  for (std::uint64_t r = q; r > 1; r /= f[0]) ++e;
  return {f[0], e};
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

namespace poly {

std::vector<std::uint64_t> rem(std::vector<std::uint64_t> a, std::span<const std::uint64_t> b,
                               std::uint64_t p) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      const std::uint64_t t = mulmod(lead, b[j], p);
      a[shift + j] = (a[shift + j] + p - t) % p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p) {
  const unsigned k = static_cast<unsigned>(monic.size() - 1);
  if (k <= 1) return k == 1;
  std::vector<std::uint64_t> a(monic.begin(), monic.end());
  std::vector<std::uint64_t> divisor;
  for (unsigned d = 1; d <= k / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    divisor.assign(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t v = c;
      for (unsigned i = 0; i < d; ++i) {
        divisor[i] = v % p;
        v /= p;
      }
      if (rem(a, divisor, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

// --- construction ---------------------------------------------------------

FieldPtr Field::make(std::uint64_t p, unsigned k, const FieldOptions& opts) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("field degree out of range");
  std::uint64_t size = 0;
  try {
    size = ipow(p, k);
  } catch (const std::overflow_error&) {
    throw GuardExceeded("field size exceeds the configured maximum");
  }
  if (size > opts.max_size) throw GuardExceeded("field size " + std::to_string(size) + " exceeds the configured maximum");
  if (k == 1) return with_modulus(p, {0, 1}, opts);

  std::vector<std::uint64_t> m(k + 1, 0);
  m[k] = 1;
  const std::uint64_t count = size;
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t v = c;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = v % p;
      v /= p;
    }
    if (m[0] == 0) continue;  // divisible by t
    if (poly::is_irreducible(m, p)) return with_modulus(p, m, opts);
  }
  throw InternalError("no irreducible polynomial found");
}

FieldPtr Field::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus,
                             const FieldOptions& opts) {
  return FieldPtr(new Field(p, std::move(modulus), opts));
}

Field::Field(std::uint64_t p, std::vector<std::uint64_t> modulus, const FieldOptions& opts)
    : p_(p), k_(0), size_(0), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw std::invalid_argument("field characteristic " + std::to_string(p_) + " is not prime");
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (auto c : modulus_)
    if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
  k_ = static_cast<unsigned>(modulus_.size() - 1);
  if (k_ > kMaxDegree) throw std::invalid_argument("field degree out of range");
  try {
    size_ = ipow(p_, k_);
  } catch (const std::overflow_error&) {
    throw GuardExceeded("field size exceeds the configured maximum");
  }
  if (size_ > opts.max_size) throw GuardExceeded("field size " + std::to_string(size_) + " exceeds the configured maximum");
  if (!poly::is_irreducible(modulus_, p_)) throw std::invalid_argument("modulus is not irreducible");
  find_generator();
  if (opts.use_tables && size_ <= opts.table_limit) build_tables(opts);
}

void Field::find_generator() {
  const std::uint64_t n = size_ - 1;
  order_factors_ = prime_factors(n);
  for (std::uint64_t c = 1; c < size_; ++c) {
    const Elem g{c};
    bool primitive = true;
    for (auto r : order_factors_) {
      if (pow_poly(g, n / r) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = g;
      return;
    }
  }
  throw InternalError("finite field without a primitive element");
}

void Field::build_tables(const FieldOptions& opts) {
  const std::uint64_t n = size_ - 1;
  exp_.assign(2 * n, 0);
  log_.assign(size_, kNoLog);
  Elem x = one();
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x.code);
    exp_[i + n] = static_cast<std::uint32_t>(x.code);
    log_[x.code] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, generator_);
  }
  if (x != one()) throw InternalError("generator order mismatch while building tables");
  zech_.assign(n, kNoLog);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Elem v = add_poly(one(), Elem{exp_[i]});
    zech_[i] = v.is_zero() ? kNoLog : log_[v.code];
  }
  if (size_ <= opts.dense_limit) {
    dense_add_.resize(size_ * size_);
    dense_mul_.resize(size_ * size_);
    for (std::uint64_t a = 0; a < size_; ++a)
      for (std::uint64_t b = 0; b < size_; ++b) {
        dense_add_[a * size_ + b] = static_cast<std::uint16_t>(add_poly(Elem{a}, Elem{b}).code);
        dense_mul_[a * size_ + b] = static_cast<std::uint16_t>(mul_poly(Elem{a}, Elem{b}).code);
      }
  }
}

bool Field::same_as(const Field& other) const {
  return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

// --- codec ----------------------------------------------------------------

Elem Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Elem{static_cast<std::uint64_t>(r)};
}

Elem Field::element(std::uint64_t code) const {
  if (code >= size_) throw std::out_of_range("element code out of range");
  return Elem{code};
}

Elem Field::from_digits(std::span<const std::uint64_t> digits) const {
  if (digits.size() > k_) throw std::invalid_argument("too many digits for field element");
  std::uint64_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw std::invalid_argument("digit out of range");
    code = code * p_ + digits[i];
  }
  return Elem{code};
}

std::vector<std::uint64_t> Field::digits(Elem a) const {
  std::vector<std::uint64_t> d(k_);
  std::uint64_t v = a.code;
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

std::string Field::encode(Elem a) const { return digits_to_string(digits(a), p_); }

Elem Field::decode(std::string_view text) const {
  std::vector<std::uint64_t> d;
  if (p_ <= 36) {
    for (char c : text) d.push_back(char_digit(c));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('.', start);
      if (end == std::string_view::npos) end = text.size();
      d.push_back(std::stoull(std::string(text.substr(start, end - start))));
      start = end + 1;
    }
  }
  if (d.size() != k_) throw std::invalid_argument("element string has wrong length: '" + std::string(text) + "'");
  return from_digits(d);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << p_ << "^" << k_ << ")[" << digits_to_string(modulus_, p_) << "]";
  return os.str();
}

// --- polynomial-path arithmetic --------------------------------------------

Elem Field::add_poly(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.code ^ b.code};
  std::uint64_t out = 0, place = 1, x = a.code, y = b.code;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * place;
    x /= p_;
    y /= p_;
    if (i + 1 < k_) place *= p_;
  }
  return Elem{out};
}

Elem Field::mul_poly(Elem a, Elem b) const {
  std::array<std::uint64_t, kMaxDegree> da{}, db{};
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  std::uint64_t x = a.code, y = b.code;
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = x % p_;
    db[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  }
  for (unsigned i = 2 * k_ - 1; i-- > k_;) {
    const std::uint64_t lead = prod[i];
    if (lead == 0) continue;
    const unsigned shift = i - k_;
    for (unsigned j = 0; j < k_; ++j) {
      prod[shift + j] = (prod[shift + j] + p_ - mulmod(lead, modulus_[j], p_)) % p_;
    }
    prod[i] = 0;
  }
  std::uint64_t code = 0;
  for (unsigned i = k_; i-- > 0;) code = code * p_ + prod[i];
  return Elem{code};
}

Elem Field::pow_poly(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e) {
    if (e & 1) result = mul_poly(result, base);
    e >>= 1;
    if (e) base = mul_poly(base, base);
  }
  return result;
}

Elem Field::inv_poly(Elem a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in " + describe());
  return pow_poly(a, size_ - 2);
}

// --- dispatching arithmetic ------------------------------------------------

Elem Field::add(Elem a, Elem b) const {
  if (!dense_add_.empty()) return Elem{dense_add_[a.code * size_ + b.code]};
  if (p_ == 2) return Elem{a.code ^ b.code};
  if (exp_.empty()) return add_poly(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::uint64_t n = size_ - 1;
  const std::uint32_t la = log_[a.code];
  const std::uint32_t lb = log_[b.code];
  const std::uint64_t d = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t z = zech_[d];
  if (z == kNoLog) return zero();
  return Elem{exp_[la + z]};
}

Elem Field::neg(Elem a) const {
  if (p_ == 2 || a.is_zero()) return a;
  if (!exp_.empty()) return Elem{exp_[log_[a.code] + (size_ - 1) / 2]};
  std::uint64_t out = 0, place = 1, x = a.code;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    x /= p_;
    if (i + 1 < k_) place *= p_;
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (!dense_mul_.empty()) return Elem{dense_mul_[a.code * size_ + b.code]};
  if (exp_.empty()) return mul_poly(a, b);
  if (a.is_zero() || b.is_zero()) return zero();
  return Elem{exp_[log_[a.code] + log_[b.code]]};
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in " + describe());
  if (exp_.empty()) return inv_poly(a);
  const std::uint64_t n = size_ - 1;
  const std::uint32_t la = log_[a.code];
  return Elem{exp_[la == 0 ? 0 : n - la]};
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (exp_.empty()) return pow_poly(a, e);
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  const std::uint64_t n = size_ - 1;
  const std::uint64_t l = static_cast<std::uint64_t>(static_cast<u128>(log_[a.code]) * (e % n) % n);
  return Elem{exp_[l]};
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t order = size_ - 1;
  for (auto r : order_factors_) {
    while (order % r == 0 && pow(a, order / r) == one()) order /= r;
  }
  return order;
}

// --- FieldElem -------------------------------------------------------------

FieldElem::FieldElem(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("FieldElem without a field");
  if (value_.code >= field_->size()) throw std::out_of_range("element code out of range");
}

void FieldElem::check_same(const FieldElem& o) const {
  if (!field_->same_as(*o.field_))
    throw std::invalid_argument("field mismatch: " + field_->describe() + " vs " + o.field_->describe());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same(o);
  return {field_, field_->div(value_, o.value_)};
}
FieldElem FieldElem::operator-() const { return {field_, field_->neg(value_)}; }
FieldElem FieldElem::inv() const { return {field_, field_->inv(value_)}; }
FieldElem FieldElem::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElem::operator==(const FieldElem& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

}  // namespace cubics::gf
