#pragma once

// Irreducibility of plane cubics over F_q and over the algebraic closure.
//
// A cubic is reducible over a field exactly when it has a linear factor
// there. If F has F_q coefficients and a linear factor L over some extension,
// the Frobenius orbit of L consists of linear factors of F, so it has at most
// three members:
//   - orbit size 1: L is defined over F_q;
//   - orbit size 2: L * L^sigma is an F_q-conic, and its cofactor is an
//     F_q-rational line;
//   - orbit size 3: L is defined over F_{q^3} and F = c * L * L^sigma * L^sigma^2.
// So F is geometrically irreducible iff no line of P^2(F_{q^3}) divides it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubics/forms.hpp"
#include "cubics/gf/tower.hpp"

namespace cubics::classify {

using forms::CubicForm;
using forms::LinearForm;

enum class VerdictKind { GeomIrreducible, FqIrreducibleGeomReducible, FqReducible, Zero };

std::string_view to_string(VerdictKind kind);
VerdictKind verdict_kind_from_string(std::string_view text);

struct WitnessLine {
  LinearForm line;       // over F_q when degree == 1, over F_{q^3} when degree == 3
  unsigned degree = 1;   // degree of the field of definition over F_q
};

struct CubicVerdict {
  VerdictKind kind = VerdictKind::GeomIrreducible;
  std::vector<WitnessLine> factors;
  // True when factors hold a full Frobenius orbit of three conjugate lines.
  bool orbit = false;
  // For FqReducible: F / factors[0], a conic over F_q.
  std::optional<forms::ConicForm> cofactor;

  bool geometrically_irreducible() const { return kind == VerdictKind::GeomIrreducible; }
};

// First line (in enumeration order over the embedding's target field) that
// divides F, with F's coefficients pushed through the embedding.
std::optional<LinearForm> has_linear_factor_over(const CubicForm& F, const gf::Embedding& into);
// Same over F's own field.
std::optional<LinearForm> has_linear_factor_over(const CubicForm& F);

// F must have coefficients in tower.base(); throws on the zero form.
bool is_geometrically_irreducible(const CubicForm& F, const gf::Tower& tower);

// hint, when given, must be a line over tower.cubic() dividing F; it spares
// the scan over P^2(F_{q^3}) without changing the result.
CubicVerdict classify(const CubicForm& F, const gf::Tower& tower, const std::optional<LinearForm>& hint = std::nullopt);

// Normalized geometrically reducible cubics over F_q, built from products
// (F_q-line x F_q-conic) and (Frobenius orbit of an F_{q^3}-line).
class CensusSet {
 public:
  CensusSet(gf::FieldPtr base, std::vector<std::uint64_t> ordinals)
      : base_(std::move(base)), ordinals_(std::move(ordinals)) {}

  const gf::FieldPtr& base() const { return base_; }
  std::size_t size() const { return ordinals_.size(); }
  // Ordinals (see forms::cubic_at) in increasing order.
  const std::vector<std::uint64_t>& ordinals() const { return ordinals_; }
  bool contains(const CubicForm& F) const;
  std::vector<CubicForm> forms() const;

 private:
  gf::FieldPtr base_;
  std::vector<std::uint64_t> ordinals_;
};

inline constexpr std::uint64_t kDefaultCensusBound = 5;

CensusSet census_reducible(const gf::Tower& tower, std::uint64_t max_q = kDefaultCensusBound);

}  // namespace cubics::classify
