#pragma once

// Homogeneous forms in x, y, z over a finite field.
//
// Cubic coefficient order (c0 .. c9):
//   x^3, y^3, z^3, x^2y, xy^2, y^2z, yz^2, z^2x, zx^2, xyz
// Conic coefficient order (b0 .. b5):
//   x^2, y^2, z^2, xy, yz, zx
// Binary cubics in (s, t) are stored as (s^3, s^2t, st^2, t^3).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cubics/gf/field.hpp"
#include "cubics/gf/matrix.hpp"
#include "cubics/gf/projective.hpp"
#include "cubics/gf/tower.hpp"

namespace cubics::forms {

using gf::Elem;
using gf::FieldPtr;

struct CubicTag {};
struct ConicTag {};
struct LineTag {};
struct PointTag {};
struct BinaryCubicTag {};

template <std::size_t N, class Tag>
class CoeffVector {
 public:
  static constexpr std::size_t size = N;

  explicit CoeffVector(FieldPtr field) : field_(std::move(field)) {}
  CoeffVector(FieldPtr field, const std::array<Elem, N>& c) : field_(std::move(field)), c_(c) {
    for (auto e : c_)
      if (e.code >= field_->size()) throw std::out_of_range("coefficient outside the field");
  }
  // Integer coefficients reduced into the prime field.
  static CoeffVector from_ints(FieldPtr field, const std::array<std::int64_t, N>& v) {
    CoeffVector out(field);
    for (std::size_t i = 0; i < N; ++i) out.c_[i] = field->from_int(v[i]);
    return out;
  }

  const FieldPtr& field() const { return field_; }
  const gf::Field& f() const { return *field_; }
  Elem operator[](std::size_t i) const { return c_[i]; }
  Elem& operator[](std::size_t i) { return c_[i]; }
  const std::array<Elem, N>& coeffs() const { return c_; }
  std::array<Elem, N>& coeffs() { return c_; }

  bool is_zero() const {
    for (auto e : c_)
      if (!e.is_zero()) return false;
    return true;
  }

  // First nonzero coefficient scaled to 1; the zero vector is returned as is.
  CoeffVector normalized() const {
    CoeffVector out = *this;
    gf::canonicalize(*field_, out.c_);
    return out;
  }
  bool is_normalized() const { return normalized().c_ == c_; }

  CoeffVector scaled(Elem lambda) const {
    CoeffVector out = *this;
    for (auto& e : out.c_) e = field_->mul(e, lambda);
    return out;
  }
  CoeffVector operator+(const CoeffVector& o) const {
    check_same(o);
    CoeffVector out = *this;
    for (std::size_t i = 0; i < N; ++i) out.c_[i] = field_->add(c_[i], o.c_[i]);
    return out;
  }

  // Coefficients pushed through a field embedding.
  CoeffVector lifted(const gf::Embedding& emb) const {
    if (!emb.source()->same_as(*field_)) throw std::invalid_argument("embedding source does not match form field");
    CoeffVector out(emb.target());
    for (std::size_t i = 0; i < N; ++i) out.c_[i] = emb(c_[i]);
    return out;
  }
  // Inverse of lifted(); nullopt when some coefficient is outside the image.
  std::optional<CoeffVector> descended(const gf::Embedding& emb) const {
    if (!emb.target()->same_as(*field_)) throw std::invalid_argument("embedding target does not match form field");
    CoeffVector out(emb.source());
    for (std::size_t i = 0; i < N; ++i) {
      auto pre = emb.preimage(c_[i]);
      if (!pre) return std::nullopt;
      out.c_[i] = *pre;
    }
    return out;
  }

  bool operator==(const CoeffVector& o) const { return field_->same_as(*o.field_) && c_ == o.c_; }
  bool projectively_equal(const CoeffVector& o) const { return normalized() == o.normalized(); }

  void check_same(const CoeffVector& o) const {
    if (!field_->same_as(*o.field_)) throw std::invalid_argument("forms over different fields");
  }

 private:
  FieldPtr field_;
  std::array<Elem, N> c_{};
};

using CubicForm = CoeffVector<10, CubicTag>;
using ConicForm = CoeffVector<6, ConicTag>;
using LinearForm = CoeffVector<3, LineTag>;
using ProjectivePoint = CoeffVector<3, PointTag>;
using BinaryCubic = CoeffVector<4, BinaryCubicTag>;

using Exponent = std::array<int, 3>;
inline constexpr std::array<Exponent, 10> kCubicMonomials = {{
    {3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {1, 2, 0},
    {0, 2, 1}, {0, 1, 2}, {1, 0, 2}, {2, 0, 1}, {1, 1, 1},
}};
inline constexpr std::array<Exponent, 6> kConicMonomials = {{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1},
}};
inline constexpr std::array<Exponent, 3> kLinearMonomials = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

// Index of a cubic / conic monomial by exponent, or -1.
int cubic_index(const Exponent& e);
int conic_index(const Exponent& e);

// --- evaluation -------------------------------------------------------------

// Values of the ten cubic monomials at (x, y, z), in coefficient order.
std::array<Elem, 10> cubic_monomials_at(const gf::Field& f, Elem x, Elem y, Elem z);
std::array<Elem, 6> conic_monomials_at(const gf::Field& f, Elem x, Elem y, Elem z);

// Value at the stored coordinates of P; only vanishing is representative-free.
// Form and point must share a field.
Elem evaluate(const CubicForm& F, const ProjectivePoint& P);
Elem evaluate(const ConicForm& Q, const ProjectivePoint& P);
Elem evaluate(const LinearForm& L, const ProjectivePoint& P);
// Coefficients of F are first pushed into the point's field through emb.
Elem evaluate(const CubicForm& F, const ProjectivePoint& P, const gf::Embedding& emb);

bool vanishes_at(const CubicForm& F, const ProjectivePoint& P);

// --- products and substitution ---------------------------------------------

ConicForm multiply(const LinearForm& a, const LinearForm& b);
CubicForm multiply(const LinearForm& L, const ConicForm& Q);
CubicForm multiply(const LinearForm& a, const LinearForm& b, const LinearForm& c);

// Exact quotient F / L, or nullopt when L does not divide F.
std::optional<ConicForm> divide(const CubicForm& F, const LinearForm& L);

// F(M v) for v = (x, y, z)^T, i.e. x -> M00 x + M01 y + M02 z and so on.
// Throws std::invalid_argument when M is singular.
CubicForm substitute(const CubicForm& F, const gf::Matrix& M);
ConicForm substitute(const ConicForm& Q, const gf::Matrix& M);
LinearForm substitute(const LinearForm& L, const gf::Matrix& M);

// --- lines -------------------------------------------------------------------

// Two points spanning the line {L = 0}: with pivot the first nonzero
// coefficient, A sets the first free variable to 1, B the second.
std::pair<ProjectivePoint, ProjectivePoint> line_basis(const LinearForm& L);

// F(sA + tB) with (A, B) = line_basis(L); zero iff L divides F.
BinaryCubic restrict_to_line(const CubicForm& F, const LinearForm& L);

// Same predicate as restrict_to_line(F, L).is_zero(), evaluated lazily.
bool line_divides(const LinearForm& L, const CubicForm& F);

// Line through two distinct points (cross product), canonicalized.
LinearForm line_through(const ProjectivePoint& a, const ProjectivePoint& b);

// --- Frobenius ---------------------------------------------------------------

template <std::size_t N, class Tag>
CoeffVector<N, Tag> frobenius_form(const CoeffVector<N, Tag>& v, const gf::Tower& tower, unsigned i = 1) {
  CoeffVector<N, Tag> out(v.field());
  for (std::size_t j = 0; j < N; ++j) out[j] = tower.frobenius(v.f(), v[j], i);
  return out;
}

// --- enumeration -------------------------------------------------------------

// Number of points (equivalently lines) of P^2 over a field of size m.
std::uint64_t plane_size(std::uint64_t m);
LinearForm line_at(const FieldPtr& field, std::uint64_t index);
ProjectivePoint point_at(const FieldPtr& field, std::uint64_t index);
std::uint64_t line_index(const LinearForm& L);  // L must be canonical

// Normalized cubics: (m^10 - 1)/(m - 1) of them.
std::uint64_t cubic_count(std::uint64_t m);
CubicForm cubic_at(const FieldPtr& field, std::uint64_t index);
std::uint64_t conic_count(std::uint64_t m);
ConicForm conic_at(const FieldPtr& field, std::uint64_t index);

// --- text codecs -------------------------------------------------------------

// Polynomial strings in the style "x^2*y + x^2*z + y^2*z" or "-3x^3 - 5xy^2".
// Prime-field coefficients are integers (negative allowed); other elements
// are written in braces with their digit codec, e.g. "{01}*x^3".
std::string to_string(const CubicForm& F);
std::string to_string(const ConicForm& Q);
std::string to_string(const LinearForm& L);
CubicForm parse_cubic(std::string_view text, const FieldPtr& field);
LinearForm parse_linear(std::string_view text, const FieldPtr& field);

// Positional codec: comma-separated element codes in coefficient order.
template <std::size_t N, class Tag>
std::string to_positional(const CoeffVector<N, Tag>& v) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out.push_back(',');
    out += v.f().encode(v[i]);
  }
  return out;
}
template <class Vec>
Vec parse_positional(std::string_view text, const FieldPtr& field) {
  Vec out(field);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < Vec::size; ++i) {
    auto end = text.find(',', pos);
    if ((end == std::string_view::npos) != (i + 1 == Vec::size))
      throw std::invalid_argument("positional codec has the wrong number of entries");
    if (end == std::string_view::npos) end = text.size();
    out[i] = field->decode(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

// "[a:b:c]" with element codecs; used for points and lines.
template <std::size_t N, class Tag>
std::string to_bracket(const CoeffVector<N, Tag>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out.push_back(':');
    out += v.f().encode(v[i]);
  }
  return out + "]";
}

}  // namespace cubics::forms
