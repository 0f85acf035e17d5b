#pragma once

// Two constructions of a 3-dimensional system of cubics over F_q whose
// F_q-members are all F_q-irreducible, with exactly one geometrically
// reducible member.
//
// explicit_construction: take a normal element alpha of F_{q^3}/F_q, the
// coordinates
//   x' = alpha x + alpha^q y + alpha^{q^2} z
//   y' = alpha^q x + alpha^{q^2} y + alpha z
//   z' = alpha^{q^2} x + alpha y + alpha^q z
// and F = x'^2 y', G = y'^2 z', H = z'^2 x', T = x' y' z'. Frobenius cycles
// F -> G -> H and fixes T, so <F, G, H, T> is defined over F_q.
//
// galois_orbit_construction: cubics through the Frobenius orbit of a point of
// P^2(F_{q^6}) of degree 6 that lies on no F_q-conic. The only reducible
// member is the union of the lines P_0P_3, P_1P_4, P_2P_5.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cubics/classify.hpp"
#include "cubics/forms.hpp"
#include "cubics/gf/tower.hpp"
#include "cubics/linsys.hpp"

namespace cubics::construct {

using forms::CubicForm;
using forms::LinearForm;
using forms::ProjectivePoint;
using gf::Elem;

inline constexpr std::uint64_t kExplicitBound = 16;
inline constexpr std::uint64_t kOrbitBound = 7;
inline constexpr std::uint64_t kOrbitBudget = 10000;
inline constexpr std::uint64_t kLemmaBound = 7;

struct ExplicitWitness {
  std::uint64_t q = 0;
  gf::TowerPtr tower;
  Elem alpha;                      // normal element of F_{q^3}
  gf::Matrix coordinate_change;    // rows: x', y', z' over F_{q^3}
  CubicForm F, G, H, T;            // over F_{q^3}
  std::vector<CubicForm> descent;  // R_0, R_1, R_2, T over F_q
  linsys::LinearSystem system;
  linsys::ScanReport scan;
};

// Throws GuardExceeded above max_q and VerificationFailure if any of the
// witness invariants fails.
ExplicitWitness explicit_construction(std::uint64_t q, unsigned threads = 0, std::uint64_t max_q = kExplicitBound);

struct OrbitWitness {
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  gf::TowerPtr tower;
  ProjectivePoint point;                 // P = P_0 over F_{q^6}
  std::vector<ProjectivePoint> orbit;    // P_i = sigma^i(P)
  std::uint64_t candidates = 0;          // points tried, including the accepted one
  std::uint64_t rejected_small_orbit = 0;
  std::uint64_t rejected_on_conic = 0;
  bool from_enumeration = false;         // accepted point came from the fallback
  std::size_t through_dimension = 0;
  linsys::LinearSystem system;
  linsys::ScanReport scan;
  std::array<LinearForm, 3> opposite_lines;  // P_0P_3, P_1P_4, P_2P_5 over F_{q^6}
  CubicForm reducible_member;                // over F_q
};

// Degree of P over F_q (size of its Frobenius orbit), P over tower.top().
unsigned point_degree(const ProjectivePoint& P, const gf::Tower& tower);
// The 6x6 conic-monomial matrix of the orbit is nonsingular.
bool orbit_avoids_conics(const std::vector<ProjectivePoint>& orbit);

// Throws BudgetExhausted when no suitable point turns up within budget
// candidates, GuardExceeded above max_q, VerificationFailure on a failed
// invariant (including a through-orbit space of dimension other than 4).
OrbitWitness galois_orbit_construction(std::uint64_t q, std::uint64_t seed, unsigned threads = 0,
                                       std::uint64_t budget = kOrbitBudget, std::uint64_t max_q = kOrbitBound);

struct Lemma31Report {
  std::uint64_t q = 0;
  std::uint64_t tuples = 0;  // q^4 - 1
  std::uint64_t members = 0;
  std::uint64_t reducible_members = 0;
  std::map<classify::VerdictKind, std::uint64_t> tuples_by_kind;
  std::uint64_t counterexamples = 0;
  double seconds = 0;
};

// For all nonzero (a, b, c, d): if a x^2y + b y^2z + c z^2x + d xyz is
// geometrically reducible then abc = 0. Throws VerificationFailure on a
// counterexample.
Lemma31Report lemma31_check(std::uint64_t q, unsigned threads = 0, std::uint64_t max_q = kLemmaBound);

}  // namespace cubics::construct
