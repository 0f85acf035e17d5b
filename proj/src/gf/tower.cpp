#include "cubics/gf/tower.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cubics/error.hpp"

namespace cubics::gf {

namespace {

constexpr std::uint64_t kEmbeddingTableLimit = std::uint64_t{1} << 22;

// Value of the F_p-polynomial `coeffs` at z in `field`.
Elem eval_prime_poly(const Field& field, std::span<const std::uint64_t> coeffs, Elem z) {
  Elem acc = field.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = field.add(field.mul(acc, z), field.from_int(static_cast<std::int64_t>(coeffs[i])));
  return acc;
}

std::vector<Elem> roots_in(const Field& src, const Field& dst) {
  if (src.characteristic() != dst.characteristic())
    throw std::invalid_argument("embedding between fields of different characteristic");
  if (dst.degree() % src.degree() != 0)
    throw std::invalid_argument("no embedding: " + src.describe() + " is not a subfield of " + dst.describe());
  // Candidates: the copy of F_{|src|} inside dst, i.e. 0 and the powers of h.
  const std::uint64_t n_dst = dst.size() - 1;
  const std::uint64_t n_src = src.size() - 1;
  const Elem h = dst.pow(dst.generator(), n_dst / n_src);
  std::vector<Elem> roots;
  if (eval_prime_poly(dst, src.modulus(), dst.zero()).is_zero()) roots.push_back(dst.zero());
  Elem z = dst.one();
  for (std::uint64_t j = 0; j < n_src; ++j) {
    if (eval_prime_poly(dst, src.modulus(), z).is_zero()) roots.push_back(z);
    z = dst.mul(z, h);
  }
  if (roots.size() != src.degree())
    throw InternalError("modulus of " + src.describe() + " has " + std::to_string(roots.size()) +
                        " roots in " + dst.describe());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

// --- Embedding -------------------------------------------------------------

Embedding::Embedding(FieldPtr src, FieldPtr dst, Elem root)
    : src_(std::move(src)), dst_(std::move(dst)), root_(root) {
  if (src_->size() <= kEmbeddingTableLimit) {
    image_.resize(src_->size());
    for (std::uint64_t c = 0; c < src_->size(); ++c) {
      image_[c] = evaluate(Elem{c});
      preimage_.emplace(image_[c].code, c);
    }
    if (preimage_.size() != src_->size()) throw InternalError("embedding is not injective");
  }
}

Embedding Embedding::find(FieldPtr src, FieldPtr dst) {
  const auto roots = roots_in(*src, *dst);
  return Embedding(std::move(src), std::move(dst), roots.front());
}

Embedding Embedding::find_compatible(FieldPtr src, FieldPtr dst, const Embedding& sub_to_src,
                                     const Embedding& sub_to_dst) {
  const auto roots = roots_in(*src, *dst);
  const Elem t_sub = sub_to_src.source()->degree() == 1 ? sub_to_src.source()->one()
                                                         : Elem{sub_to_src.source()->characteristic()};
  for (const Elem r : roots) {
    Embedding candidate(src, dst, r);
    if (candidate(sub_to_src(t_sub)) == sub_to_dst(t_sub)) return candidate;
  }
  throw InternalError("no compatible embedding of " + src->describe() + " into " + dst->describe());
}

Embedding Embedding::identity(FieldPtr field) {
  const Elem t = field->degree() == 1 ? field->zero() : Elem{field->characteristic()};
  return Embedding(field, field, t);
}

Elem Embedding::evaluate(Elem a) const {
  const auto d = src_->digits(a);
  const Field& f = *dst_;
  Elem acc = f.zero();
  for (std::size_t i = d.size(); i-- > 0;)
    acc = f.add(f.mul(acc, root_), f.from_int(static_cast<std::int64_t>(d[i])));
  return acc;
}

Elem Embedding::operator()(Elem a) const {
  if (!image_.empty()) return image_[a.code];
  return evaluate(a);
}

std::optional<Elem> Embedding::preimage(Elem b) const {
  if (image_.empty()) throw std::logic_error("preimage lookup on an untabulated embedding");
  auto it = preimage_.find(b.code);
  if (it == preimage_.end()) return std::nullopt;
  return Elem{it->second};
}

// --- SubfieldCoordinates ---------------------------------------------------

SubfieldCoordinates::SubfieldCoordinates(Embedding embedding, std::uint64_t table_limit)
    : emb_(std::move(embedding)) {
  const Field& k = *emb_.source();
  const Field& e = *emb_.target();
  r_ = e.degree() / k.degree();
  basis_.resize(r_);
  basis_[0] = e.one();
  for (unsigned j = 1; j < r_; ++j) basis_[j] = e.mul(basis_[j - 1], e.generator());

  // F_p-matrix whose column (j*deg K + i) holds the digits of t^i * g^j.
  prime_ = Field::make(e.characteristic(), 1);
  const unsigned n = e.degree();
  Matrix aug(prime_, n, 2 * n);
  Elem t_pow = k.one();
  for (unsigned i = 0; i < k.degree(); ++i) {
    const Elem ti = emb_(t_pow);
    for (unsigned j = 0; j < r_; ++j) {
      const auto dig = e.digits(e.mul(ti, basis_[j]));
      for (unsigned row = 0; row < n; ++row) aug.at(row, j * k.degree() + i) = Elem{dig[row]};
    }
    t_pow = k.degree() == 1 ? k.one() : k.mul(t_pow, Elem{k.characteristic()});
  }
  for (unsigned i = 0; i < n; ++i) aug.at(i, n + i) = prime_->one();
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InternalError("subfield coordinate basis is degenerate");
  Matrix inv(prime_, n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  inverse_ = std::move(inv);

  if (e.size() <= table_limit) {
    table_.assign(e.size() * r_, 0);
    std::vector<std::vector<Elem>> scaled(r_, std::vector<Elem>(k.size()));
    for (unsigned j = 0; j < r_; ++j)
      for (std::uint64_t c = 0; c < k.size(); ++c) scaled[j][c] = e.mul(emb_(Elem{c}), basis_[j]);
    std::vector<std::uint64_t> counter(r_, 0);
    for (std::uint64_t visited = 0; visited < e.size(); ++visited) {
      Elem z = e.zero();
      for (unsigned j = 0; j < r_; ++j) z = e.add(z, scaled[j][counter[j]]);
      for (unsigned j = 0; j < r_; ++j) table_[z.code * r_ + j] = static_cast<std::uint32_t>(counter[j]);
      for (unsigned j = 0; j < r_; ++j) {
        if (++counter[j] < k.size()) break;
        counter[j] = 0;
      }
    }
  }
}

void SubfieldCoordinates::coordinates(Elem z, std::span<Elem> out) const {
  if (out.size() != r_) throw std::invalid_argument("coordinate buffer has wrong length");
  if (!table_.empty()) {
    const std::uint32_t* row = table_row(z);
    for (unsigned j = 0; j < r_; ++j) out[j] = Elem{row[j]};
    return;
  }
  const auto c = coordinates_solve(z);
  std::copy(c.begin(), c.end(), out.begin());
}

std::vector<Elem> SubfieldCoordinates::coordinates(Elem z) const {
  std::vector<Elem> out(r_);
  coordinates(z, out);
  return out;
}

std::vector<Elem> SubfieldCoordinates::coordinates_solve(Elem z) const {
  const Field& k = *emb_.source();
  const Field& e = *emb_.target();
  const unsigned n = e.degree();
  const auto dig = e.digits(z);
  std::vector<std::uint64_t> x(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    Elem acc = prime_->zero();
    for (unsigned j = 0; j < n; ++j) acc = prime_->add(acc, prime_->mul(inverse_->at(i, j), Elem{dig[j]}));
    x[i] = acc.code;
  }
  std::vector<Elem> out(r_);
  for (unsigned j = 0; j < r_; ++j)
    out[j] = k.from_digits(std::span<const std::uint64_t>(x.data() + j * k.degree(), k.degree()));
  return out;
}

Elem SubfieldCoordinates::combine(std::span<const Elem> coords) const {
  if (coords.size() != r_) throw std::invalid_argument("coordinate vector has wrong length");
  const Field& e = *emb_.target();
  Elem z = e.zero();
  for (unsigned j = 0; j < r_; ++j) z = e.add(z, e.mul(emb_(coords[j]), basis_[j]));
  return z;
}

// --- Tower -----------------------------------------------------------------

std::shared_ptr<const Tower> Tower::make(std::uint64_t q, const FieldOptions& opts) {
  const auto pp = factor_prime_power(q);
  if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  std::shared_ptr<Tower> t(new Tower());
  t->q_ = q;
  t->base_ = Field::make(pp.p, pp.e, opts);
  t->quadratic_ = Field::make(pp.p, 2 * pp.e, opts);
  t->cubic_ = Field::make(pp.p, 3 * pp.e, opts);
  t->top_ = Field::make(pp.p, 6 * pp.e, opts);
  t->base_to_top_ = Embedding::find(t->base_, t->top_);
  t->base_to_quadratic_ = Embedding::find(t->base_, t->quadratic_);
  t->base_to_cubic_ = Embedding::find(t->base_, t->cubic_);
  t->quadratic_to_top_ = Embedding::find_compatible(t->quadratic_, t->top_, t->base_to_quadratic_, t->base_to_top_);
  t->cubic_to_top_ = Embedding::find_compatible(t->cubic_, t->top_, t->base_to_cubic_, t->base_to_top_);
  t->cubic_coords_ = std::make_unique<SubfieldCoordinates>(t->base_to_cubic_, std::uint64_t{1} << 24);
  t->top_coords_ = std::make_unique<SubfieldCoordinates>(t->base_to_top_, std::uint64_t{1} << 16);
  return t;
}

Elem Tower::frobenius(const Field& field, Elem z, unsigned i) const {
  for (unsigned j = 0; j < i; ++j) z = field.pow(z, q_);
  return z;
}

bool Tower::in_subfield(Elem z_top, unsigned d) const {
  if (d == 0 || 6 % d != 0) throw std::invalid_argument("subfield degree must divide 6");
  return frobenius(z_top, d) == z_top;
}

Elem Tower::find_normal_element() const {
  const Field& e = *cubic_;
  for (std::uint64_t c = 0; c < e.size(); ++c) {
    const Elem a0{c};
    const Elem a1 = frobenius(e, a0);
    const Elem a2 = frobenius(e, a1);
    Matrix m(base_, 3, 3);
    const Elem conj[3] = {a0, a1, a2};
    for (unsigned r = 0; r < 3; ++r) {
      const auto co = cubic_coords_->coordinates(conj[r]);
      for (unsigned j = 0; j < 3; ++j) m.at(r, j) = co[j];
    }
    if (!determinant(std::move(m)).is_zero()) return a0;
  }
  throw InternalError("no normal element found in " + e.describe());
}

}  // namespace cubics::gf
