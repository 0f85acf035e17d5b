#include "cubics/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubics/error.hpp"

namespace cubics::classify {

using forms::ConicForm;

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::GeomIrreducible: return "GeomIrreducible";
    case VerdictKind::FqIrreducibleGeomReducible: return "FqIrreducibleGeomReducible";
    case VerdictKind::FqReducible: return "FqReducible";
    case VerdictKind::Zero: return "Zero";
  }
  return "?";
}

VerdictKind verdict_kind_from_string(std::string_view text) {
  for (auto k : {VerdictKind::GeomIrreducible, VerdictKind::FqIrreducibleGeomReducible, VerdictKind::FqReducible,
                 VerdictKind::Zero})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown verdict kind '" + std::string(text) + "'");
}

std::optional<LinearForm> has_linear_factor_over(const CubicForm& F, const gf::Embedding& into) {
  if (F.is_zero()) throw std::invalid_argument("zero form has every line as a factor");
  const CubicForm lifted = F.lifted(into);
  const auto& field = into.target();
  const std::uint64_t lines = forms::plane_size(field->size());
  for (std::uint64_t i = 0; i < lines; ++i) {
    LinearForm L = forms::line_at(field, i);
    if (forms::line_divides(L, lifted)) return L;
  }
  return std::nullopt;
}

std::optional<LinearForm> has_linear_factor_over(const CubicForm& F) {
  return has_linear_factor_over(F, gf::Embedding::identity(F.field()));
}

bool is_geometrically_irreducible(const CubicForm& F, const gf::Tower& tower) {
  if (F.is_zero()) throw std::invalid_argument("zero form is not a curve");
  if (!F.f().same_as(*tower.base())) throw std::invalid_argument("form is not over the tower's base field");
  return !has_linear_factor_over(F, tower.base_to_cubic()).has_value();
}

CubicVerdict classify(const CubicForm& F, const gf::Tower& tower, const std::optional<LinearForm>& hint) {
  CubicVerdict v;
  if (F.is_zero()) {
    v.kind = VerdictKind::Zero;
    return v;
  }
  if (!F.f().same_as(*tower.base())) throw std::invalid_argument("form is not over the tower's base field");

  if (auto rational = has_linear_factor_over(F)) {
    v.kind = VerdictKind::FqReducible;
    v.factors.push_back({*rational, 1});
    v.cofactor = forms::divide(F, *rational);
    if (!v.cofactor) throw InternalError("rational witness line does not divide " + forms::to_string(F));
    return v;
  }

  std::optional<LinearForm> line;
  if (hint) {
    if (!hint->f().same_as(*tower.cubic()) || !forms::line_divides(hint->normalized(), F.lifted(tower.base_to_cubic())))
      throw std::invalid_argument("hint line does not divide " + forms::to_string(F));
    line = hint->normalized();
  } else {
    line = has_linear_factor_over(F, tower.base_to_cubic());
  }
  if (!line) return v;

  // No rational factor, so the witness has a Frobenius orbit of size 3, and
  // those three lines are all the linear factors. Start the orbit at the one
  // a plain scan would have found first.
  LinearForm l0 = *line;
  LinearForm next = *line;
  for (int i = 0; i < 2; ++i) {
    next = forms::frobenius_form(next, tower);
    if (forms::line_index(next) < forms::line_index(l0)) l0 = next;
  }
  const LinearForm l1 = forms::frobenius_form(l0, tower);
  const LinearForm l2 = forms::frobenius_form(l1, tower);
  if (l0 == l1 || forms::frobenius_form(l2, tower) != l0)
    throw InternalError("witness line of " + forms::to_string(F) + " does not have a Frobenius orbit of size 3");
  const CubicForm product = forms::multiply(l0, l1, l2);
  if (!product.projectively_equal(F.lifted(tower.base_to_cubic())))
    throw InternalError("conjugate lines do not multiply back to " + forms::to_string(F));
  v.kind = VerdictKind::FqIrreducibleGeomReducible;
  v.orbit = true;
  v.factors = {{l0, 3}, {l1, 3}, {l2, 3}};
  return v;
}

bool CensusSet::contains(const CubicForm& F) const {
  if (F.is_zero()) return false;
  if (!F.f().same_as(*base_)) throw std::invalid_argument("form is not over the census field");
  const auto ord = gf::projective_ordinal(F.f().size(), F.normalized().coeffs());
  return std::binary_search(ordinals_.begin(), ordinals_.end(), ord);
}

std::vector<CubicForm> CensusSet::forms() const {
  std::vector<CubicForm> out;
  out.reserve(ordinals_.size());
  for (auto o : ordinals_) out.push_back(forms::cubic_at(base_, o));
  return out;
}

CensusSet census_reducible(const gf::Tower& tower, std::uint64_t max_q) {
  if (tower.q() > max_q)
    throw GuardExceeded("census is limited to q <= " + std::to_string(max_q) + " (requested q = " +
                        std::to_string(tower.q()) + ")");
  const auto& base = tower.base();
  const std::uint64_t q = base->size();
  std::vector<bool> seen(forms::cubic_count(q), false);
  auto mark = [&](const CubicForm& product) {
    const CubicForm n = product.normalized();
    seen[gf::projective_ordinal(q, n.coeffs())] = true;
  };

  const std::uint64_t lines = forms::plane_size(q);
  const std::uint64_t conics = forms::conic_count(q);
  for (std::uint64_t i = 0; i < lines; ++i) {
    const LinearForm L = forms::line_at(base, i);
    for (std::uint64_t j = 0; j < conics; ++j) mark(forms::multiply(L, forms::conic_at(base, j)));
  }

  const auto& cubic = tower.cubic();
  const std::uint64_t ext_lines = forms::plane_size(cubic->size());
  for (std::uint64_t i = 0; i < ext_lines; ++i) {
    const LinearForm l0 = forms::line_at(cubic, i);
    const LinearForm l1 = forms::frobenius_form(l0, tower);
    if (l1 == l0) continue;  // rational line, covered above
    const LinearForm l2 = forms::frobenius_form(l1, tower);
    // Visit each orbit once, from its smallest member.
    if (forms::line_index(l1) < i || forms::line_index(l2) < i) continue;
    const auto descended = forms::multiply(l0, l1, l2).normalized().descended(tower.base_to_cubic());
    if (!descended) throw InternalError("orbit product is not defined over the base field");
    mark(*descended);
  }

  std::vector<std::uint64_t> ordinals;
  for (std::uint64_t o = 0; o < seen.size(); ++o)
    if (seen[o]) ordinals.push_back(o);
  return CensusSet(base, std::move(ordinals));
}

}  // namespace cubics::classify
