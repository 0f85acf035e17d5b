#include "cubics/forms.hpp"

#include <stdexcept>

#include "cubics/gf/projective.hpp"

namespace cubics::forms {

using gf::Field;

namespace {

template <class A, class B>
void require_same_field(const A& a, const B& b) {
  if (!a.f().same_as(b.f()))
    throw std::invalid_argument("field mismatch: " + a.f().describe() + " vs " + b.f().describe());
}

// Binary linear form a s + b t.
struct BinLin {
  Elem s, t;
};

// (a s + b t)(c s + d t)(e s + f t) accumulated into out with weight w.
void add_binary_product(const Field& f, const BinLin& u, const BinLin& v, const BinLin& w, Elem weight,
                        std::array<Elem, 4>& out) {
  const Elem q0 = f.mul(u.s, v.s);
  const Elem q1 = f.add(f.mul(u.s, v.t), f.mul(u.t, v.s));
  const Elem q2 = f.mul(u.t, v.t);
  const Elem c0 = f.mul(q0, w.s);
  const Elem c1 = f.add(f.mul(q0, w.t), f.mul(q1, w.s));
  const Elem c2 = f.add(f.mul(q1, w.t), f.mul(q2, w.s));
  const Elem c3 = f.mul(q2, w.t);
  out[0] = f.add(out[0], f.mul(weight, c0));
  out[1] = f.add(out[1], f.mul(weight, c1));
  out[2] = f.add(out[2], f.mul(weight, c2));
  out[3] = f.add(out[3], f.mul(weight, c3));
}

Elem eval_cubic_raw(const Field& f, const std::array<Elem, 10>& c, Elem x, Elem y, Elem z) {
  const auto m = cubic_monomials_at(f, x, y, z);
  Elem acc = f.zero();
  for (std::size_t i = 0; i < 10; ++i)
    if (!c[i].is_zero()) acc = f.add(acc, f.mul(c[i], m[i]));
  return acc;
}

// Expands each monomial exponent into its list of variable indices.
template <std::size_t D>
std::array<int, D> variables_of(const Exponent& e) {
  std::array<int, D> out{};
  std::size_t k = 0;
  for (int v = 0; v < 3; ++v)
    for (int i = 0; i < e[v]; ++i) out[k++] = v;
  return out;
}

void require_invertible(const gf::Matrix& M) {
  if (M.rows() != 3 || M.cols() != 3) throw std::invalid_argument("substitution matrix must be 3x3");
  if (gf::determinant(M).is_zero()) throw std::invalid_argument("substitution matrix is singular");
}

LinearForm matrix_row(const gf::Matrix& M, std::size_t r) {
  return LinearForm(M.field(), {M.at(r, 0), M.at(r, 1), M.at(r, 2)});
}

}  // namespace

int cubic_index(const Exponent& e) {
  for (std::size_t i = 0; i < kCubicMonomials.size(); ++i)
    if (kCubicMonomials[i] == e) return static_cast<int>(i);
  return -1;
}

int conic_index(const Exponent& e) {
  for (std::size_t i = 0; i < kConicMonomials.size(); ++i)
    if (kConicMonomials[i] == e) return static_cast<int>(i);
  return -1;
}

std::array<Elem, 10> cubic_monomials_at(const Field& f, Elem x, Elem y, Elem z) {
  const Elem x2 = f.mul(x, x), y2 = f.mul(y, y), z2 = f.mul(z, z);
  return {f.mul(x2, x), f.mul(y2, y), f.mul(z2, z), f.mul(x2, y), f.mul(x, y2),
          f.mul(y2, z), f.mul(y, z2), f.mul(z2, x), f.mul(x2, z), f.mul(f.mul(x, y), z)};
}

std::array<Elem, 6> conic_monomials_at(const Field& f, Elem x, Elem y, Elem z) {
  return {f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(y, z), f.mul(z, x)};
}

Elem evaluate(const CubicForm& F, const ProjectivePoint& P) {
  require_same_field(F, P);
  return eval_cubic_raw(F.f(), F.coeffs(), P[0], P[1], P[2]);
}

Elem evaluate(const ConicForm& Q, const ProjectivePoint& P) {
  require_same_field(Q, P);
  const Field& f = Q.f();
  const auto m = conic_monomials_at(f, P[0], P[1], P[2]);
  Elem acc = f.zero();
  for (std::size_t i = 0; i < 6; ++i) acc = f.add(acc, f.mul(Q[i], m[i]));
  return acc;
}

Elem evaluate(const LinearForm& L, const ProjectivePoint& P) {
  require_same_field(L, P);
  const Field& f = L.f();
  return f.add(f.add(f.mul(L[0], P[0]), f.mul(L[1], P[1])), f.mul(L[2], P[2]));
}

Elem evaluate(const CubicForm& F, const ProjectivePoint& P, const gf::Embedding& emb) {
  return evaluate(F.lifted(emb), P);
}

bool vanishes_at(const CubicForm& F, const ProjectivePoint& P) { return evaluate(F, P).is_zero(); }

ConicForm multiply(const LinearForm& a, const LinearForm& b) {
  require_same_field(a, b);
  const Field& f = a.f();
  ConicForm out(a.field());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Exponent e{0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      const int k = conic_index(e);
      out[k] = f.add(out[k], f.mul(a[i], b[j]));
    }
  return out;
}

CubicForm multiply(const LinearForm& L, const ConicForm& Q) {
  require_same_field(L, Q);
  const Field& f = L.f();
  CubicForm out(L.field());
  for (int i = 0; i < 3; ++i) {
    if (L[i].is_zero()) continue;
    for (int j = 0; j < 6; ++j) {
      Exponent e = kConicMonomials[j];
      e[i] += 1;
      const int k = cubic_index(e);
      out[k] = f.add(out[k], f.mul(L[i], Q[j]));
    }
  }
  return out;
}

CubicForm multiply(const LinearForm& a, const LinearForm& b, const LinearForm& c) {
  return multiply(a, multiply(b, c));
}

std::optional<ConicForm> divide(const CubicForm& F, const LinearForm& L) {
  require_same_field(F, L);
  if (L.is_zero()) throw std::invalid_argument("division by the zero linear form");
  const Field& f = F.f();
  gf::Matrix m(F.field(), 10, 6);
  for (int j = 0; j < 6; ++j) {
    ConicForm unit(F.field());
    unit[j] = f.one();
    const CubicForm col = multiply(L, unit);
    for (int i = 0; i < 10; ++i) m.at(i, j) = col[i];
  }
  auto x = gf::solve(m, F.coeffs());
  if (!x) return std::nullopt;
  ConicForm Q(F.field());
  for (int j = 0; j < 6; ++j) Q[j] = (*x)[j];
  return Q;
}

CubicForm substitute(const CubicForm& F, const gf::Matrix& M) {
  if (!M.field()->same_as(F.f())) throw std::invalid_argument("substitution matrix over a different field");
  require_invertible(M);
  const std::array<LinearForm, 3> rows = {matrix_row(M, 0), matrix_row(M, 1), matrix_row(M, 2)};
  CubicForm out(F.field());
  for (std::size_t m = 0; m < 10; ++m) {
    if (F[m].is_zero()) continue;
    const auto v = variables_of<3>(kCubicMonomials[m]);
    out = out + multiply(rows[v[0]], rows[v[1]], rows[v[2]]).scaled(F[m]);
  }
  return out;
}

ConicForm substitute(const ConicForm& Q, const gf::Matrix& M) {
  if (!M.field()->same_as(Q.f())) throw std::invalid_argument("substitution matrix over a different field");
  require_invertible(M);
  const std::array<LinearForm, 3> rows = {matrix_row(M, 0), matrix_row(M, 1), matrix_row(M, 2)};
  ConicForm out(Q.field());
  for (std::size_t m = 0; m < 6; ++m) {
    if (Q[m].is_zero()) continue;
    const auto v = variables_of<2>(kConicMonomials[m]);
    out = out + multiply(rows[v[0]], rows[v[1]]).scaled(Q[m]);
  }
  return out;
}

LinearForm substitute(const LinearForm& L, const gf::Matrix& M) {
  if (!M.field()->same_as(L.f())) throw std::invalid_argument("substitution matrix over a different field");
  require_invertible(M);
  LinearForm out(L.field());
  for (std::size_t i = 0; i < 3; ++i) out = out + matrix_row(M, i).scaled(L[i]);
  return out;
}

std::pair<ProjectivePoint, ProjectivePoint> line_basis(const LinearForm& L) {
  const Field& f = L.f();
  int pivot = 0;
  while (pivot < 3 && L[pivot].is_zero()) ++pivot;
  if (pivot == 3) throw std::invalid_argument("zero linear form has no line");
  int free_var[2], n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != pivot) free_var[n++] = i;
  const Elem inv = f.inv(L[pivot]);
  ProjectivePoint a(L.field()), b(L.field());
  a[free_var[0]] = f.one();
  a[pivot] = f.neg(f.mul(L[free_var[0]], inv));
  b[free_var[1]] = f.one();
  b[pivot] = f.neg(f.mul(L[free_var[1]], inv));
  return {a, b};
}

BinaryCubic restrict_to_line(const CubicForm& F, const LinearForm& L) {
  require_same_field(F, L);
  const Field& f = F.f();
  const auto [a, b] = line_basis(L);
  const std::array<BinLin, 3> var = {BinLin{a[0], b[0]}, BinLin{a[1], b[1]}, BinLin{a[2], b[2]}};
  std::array<Elem, 4> out{};
  for (std::size_t m = 0; m < 10; ++m) {
    if (F[m].is_zero()) continue;
    const auto v = variables_of<3>(kCubicMonomials[m]);
    add_binary_product(f, var[v[0]], var[v[1]], var[v[2]], F[m], out);
  }
  return BinaryCubic(F.field(), out);
}

bool line_divides(const LinearForm& L, const CubicForm& F) {
  require_same_field(F, L);
  const Field& f = F.f();
  if (f.size() < 3) return restrict_to_line(F, L).is_zero();
  const auto [a, b] = line_basis(L);
  const auto& c = F.coeffs();
  // A nonzero binary cubic has at most three roots on P^1; test four points.
  if (!eval_cubic_raw(f, c, a[0], a[1], a[2]).is_zero()) return false;
  if (!eval_cubic_raw(f, c, b[0], b[1], b[2]).is_zero()) return false;
  if (!eval_cubic_raw(f, c, f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])).is_zero()) return false;
  const Elem g = f.generator();
  return eval_cubic_raw(f, c, f.add(a[0], f.mul(g, b[0])), f.add(a[1], f.mul(g, b[1])),
                        f.add(a[2], f.mul(g, b[2])))
      .is_zero();
}

LinearForm line_through(const ProjectivePoint& a, const ProjectivePoint& b) {
  require_same_field(a, b);
  const Field& f = a.f();
  LinearForm L(a.field(), {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
                           f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
                           f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))});
  if (L.is_zero()) throw std::invalid_argument("line_through: points coincide");
  return L.normalized();
}

std::uint64_t plane_size(std::uint64_t m) { return m * m + m + 1; }

LinearForm line_at(const FieldPtr& field, std::uint64_t index) {
  LinearForm L(field);
  gf::projective_tuple(field->size(), index, L.coeffs());
  return L;
}

ProjectivePoint point_at(const FieldPtr& field, std::uint64_t index) {
  ProjectivePoint P(field);
  gf::projective_tuple(field->size(), index, P.coeffs());
  return P;
}

std::uint64_t line_index(const LinearForm& L) { return gf::projective_ordinal(L.f().size(), L.coeffs()); }

std::uint64_t cubic_count(std::uint64_t m) { return gf::projective_count(m, 10); }

CubicForm cubic_at(const FieldPtr& field, std::uint64_t index) {
  CubicForm F(field);
  gf::projective_tuple(field->size(), index, F.coeffs());
  return F;
}

std::uint64_t conic_count(std::uint64_t m) { return gf::projective_count(m, 6); }

ConicForm conic_at(const FieldPtr& field, std::uint64_t index) {
  ConicForm Q(field);
  gf::projective_tuple(field->size(), index, Q.coeffs());
  return Q;
}

}  // namespace cubics::forms
