#include "cubics/construct.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_map>

#include "cubics/error.hpp"
#include "cubics/gf/matrix.hpp"
#include "cubics/rng.hpp"

namespace cubics::construct {

using classify::VerdictKind;
using gf::Field;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw VerificationFailure(what);
}

gf::TowerPtr make_tower(std::uint64_t q, std::uint64_t max_q, const char* what) {
  if (q > max_q)
    throw GuardExceeded(std::string(what) + " is limited to q <= " + std::to_string(max_q) + " (requested q = " +
                        std::to_string(q) + ")");
  return gf::Tower::make(q);
}

CubicForm monomial(const gf::FieldPtr& field, std::size_t index) {
  CubicForm F(field);
  F[index] = field->one();
  return F;
}

std::string qtag(std::uint64_t q) { return "q=" + std::to_string(q); }

}  // namespace

ExplicitWitness explicit_construction(std::uint64_t q, unsigned threads, std::uint64_t max_q) {
  const auto tower = make_tower(q, max_q, "explicit construction");
  const auto& ext = tower->cubic();
  const auto& base = tower->base();
  const Field& f = *ext;

  const Elem alpha = tower->find_normal_element();
  const Elem a[3] = {alpha, tower->frobenius(f, alpha, 1), tower->frobenius(f, alpha, 2)};

  gf::Matrix M(ext, 3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) M.at(r, c) = a[(r + c) % 3];
  require(!gf::determinant(M).is_zero(), qtag(q) + ": conjugates of the normal element are dependent");

  std::array<LinearForm, 3> L = {LinearForm(ext), LinearForm(ext), LinearForm(ext)};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) L[r][c] = M.at(r, c);
  const CubicForm F = forms::multiply(L[0], L[0], L[1]);
  const CubicForm G = forms::multiply(L[1], L[1], L[2]);
  const CubicForm H = forms::multiply(L[2], L[2], L[0]);
  const CubicForm T = forms::multiply(L[0], L[1], L[2]);

  // Same forms from the monomial system <x^2y, y^2z, z^2x, xyz> by substitution.
  const std::size_t mono[4] = {3, 5, 7, 9};
  const CubicForm* built[4] = {&F, &G, &H, &T};
  for (int i = 0; i < 4; ++i)
    require(forms::substitute(monomial(ext, mono[i]), M) == *built[i],
            qtag(q) + ": substitution disagrees with the product of linear forms");

  require(forms::frobenius_form(F, *tower) == G, qtag(q) + ": Frobenius does not send F to G");
  require(forms::frobenius_form(G, *tower) == H, qtag(q) + ": Frobenius does not send G to H");
  require(forms::frobenius_form(H, *tower) == F, qtag(q) + ": Frobenius does not send H to F");
  require(forms::frobenius_form(T, *tower) == T, qtag(q) + ": Frobenius does not fix T");

  // R_i = a_i F + a_{i+1} G + a_{i+2} H is Frobenius-fixed since sigma(a_i) = a_{i+1}.
  std::vector<CubicForm> lifted_descent;
  std::vector<CubicForm> descent;
  for (int i = 0; i < 3; ++i) {
    const CubicForm R = F.scaled(a[i]) + G.scaled(a[(i + 1) % 3]) + H.scaled(a[(i + 2) % 3]);
    require(forms::frobenius_form(R, *tower) == R, qtag(q) + ": descent generator is not Frobenius-fixed");
    lifted_descent.push_back(R);
  }
  lifted_descent.push_back(T);
  for (const auto& R : lifted_descent) {
    auto down = R.descended(tower->base_to_cubic());
    require(down.has_value(), qtag(q) + ": descent generator has coefficients outside F_q");
    descent.push_back(*down);
  }

  std::vector<CubicForm> stacked = lifted_descent;
  stacked.insert(stacked.end(), {F, G, H, T});
  require(linsys::independence_rank(stacked) == 4,
          qtag(q) + ": descended generators do not span <F, G, H, T> over F_{q^3}");
  require(linsys::independence_rank(descent) == 4, qtag(q) + ": descended generators are dependent");

  linsys::LinearSystem system(base, descent, "explicit " + qtag(q));
  auto scan = linsys::scan_reducible_members(system, *tower, {threads, false});

  require(scan.reducible.size() == 1,
          qtag(q) + ": expected exactly one reducible member, found " + std::to_string(scan.reducible.size()));
  const auto& only = scan.reducible.front();
  require(only.form.lifted(tower->base_to_cubic()).projectively_equal(T),
          qtag(q) + ": the reducible member is not T");
  require(only.verdict.kind == VerdictKind::FqIrreducibleGeomReducible && only.verdict.orbit &&
              only.verdict.factors.size() == 3,
          qtag(q) + ": T does not split into three conjugate lines");
  for (const auto& w : only.verdict.factors) {
    const bool is_factor = std::any_of(L.begin(), L.end(), [&](const LinearForm& l) { return l.projectively_equal(w.line); });
    require(is_factor, qtag(q) + ": witness line of T is not one of x', y', z'");
  }

  return ExplicitWitness{q, tower, alpha, M, F, G, H, T, descent, std::move(system), std::move(scan)};
}

unsigned point_degree(const ProjectivePoint& P, const gf::Tower& tower) {
  const auto start = P.normalized();
  auto cur = start;
  for (unsigned d = 1; d <= 6; ++d) {
    cur = forms::frobenius_form(cur, tower).normalized();
    if (cur == start) return d;
  }
  throw InternalError("point over F_{q^6} with Frobenius orbit longer than 6");
}

bool orbit_avoids_conics(const std::vector<ProjectivePoint>& orbit) {
  if (orbit.size() != 6) return false;
  const auto& field = orbit[0].field();
  gf::Matrix M(field, 6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto row = forms::conic_monomials_at(*field, orbit[i][0], orbit[i][1], orbit[i][2]);
    for (std::size_t j = 0; j < 6; ++j) M.at(i, j) = row[j];
  }
  return !gf::determinant(M).is_zero();
}

OrbitWitness galois_orbit_construction(std::uint64_t q, std::uint64_t seed, unsigned threads, std::uint64_t budget,
                                       std::uint64_t max_q) {
  const auto tower = make_tower(q, max_q, "orbit construction");
  const auto& top = tower->top();
  const std::uint64_t points = forms::plane_size(top->size());

  // Random candidates for the first half of the budget, then a fixed-stride
  // walk through the point enumeration.
  const std::uint64_t random_budget = (budget + 1) / 2;
  std::uint64_t stride = points * 5 / 8;
  while (std::gcd(stride, points) != 1) ++stride;
  CounterRng rng(seed);

  std::uint64_t candidates = 0, small_orbit = 0, on_conic = 0;
  bool from_enumeration = false;
  std::vector<ProjectivePoint> orbit;
  while (true) {
    if (candidates == budget)
      throw BudgetExhausted(qtag(q) + ": no degree-6 point off all F_q-conics within " + std::to_string(budget) +
                            " candidates");
    std::uint64_t ordinal;
    if (candidates < random_budget) {
      ordinal = rng.uniform(points);
    } else {
      ordinal = static_cast<std::uint64_t>((static_cast<unsigned __int128>(candidates - random_budget) * stride + 1) % points);
      from_enumeration = true;
    }
    ++candidates;
    const ProjectivePoint P = forms::point_at(top, ordinal);
    if (point_degree(P, *tower) != 6) {
      ++small_orbit;
      continue;
    }
    orbit.assign(1, P);
    for (int i = 1; i < 6; ++i) orbit.push_back(forms::frobenius_form(orbit.back(), *tower).normalized());
    if (!orbit_avoids_conics(orbit)) {
      ++on_conic;
      continue;
    }
    break;
  }

  linsys::LinearSystem system = linsys::cubics_through_points(orbit, *tower, "orbit " + qtag(q));
  const std::size_t dim = system.basis().size();
  require(dim == 4, qtag(q) + ": cubics through the orbit form a space of dimension " + std::to_string(dim) +
                        ", expected exactly 4");
  for (const auto& F : system.basis())
    for (const auto& P : orbit)
      require(forms::evaluate(F, P, tower->base_to_top()).is_zero(), qtag(q) + ": basis cubic misses an orbit point");

  std::array<LinearForm, 3> lines = {forms::line_through(orbit[0], orbit[3]), forms::line_through(orbit[1], orbit[4]),
                                     forms::line_through(orbit[2], orbit[5])};
  for (const auto& l : lines) {
    require(forms::frobenius_form(l, *tower, 3).normalized() == l, qtag(q) + ": line P_iP_{i+3} is not fixed by sigma^3");
  }
  const auto product_top = forms::multiply(lines[0], lines[1], lines[2]).normalized();
  const auto product = product_top.descended(tower->base_to_top());
  require(product.has_value(), qtag(q) + ": P_0P_3 * P_1P_4 * P_2P_5 is not defined over F_q");
  {
    std::vector<CubicForm> with = system.basis();
    with.push_back(*product);
    require(linsys::independence_rank(with) == 4, qtag(q) + ": P_0P_3 * P_1P_4 * P_2P_5 is outside the system");
  }

  auto scan = linsys::scan_reducible_members(system, *tower, {threads, false});
  for (const auto& r : scan.reducible)
    require(r.verdict.kind != VerdictKind::FqReducible,
            qtag(q) + ": member " + forms::to_string(r.form) + " is reducible over F_q");
  require(scan.reducible.size() == 1,
          qtag(q) + ": expected exactly one reducible member, found " + std::to_string(scan.reducible.size()));
  const auto& only = scan.reducible.front();
  require(only.form.projectively_equal(*product), qtag(q) + ": the reducible member is not P_0P_3 * P_1P_4 * P_2P_5");
  for (const auto& w : only.verdict.factors) {
    const auto up = w.line.lifted(tower->cubic_to_top()).normalized();
    require(std::find(lines.begin(), lines.end(), up) != lines.end(),
            qtag(q) + ": witness line is not one of the lines P_iP_{i+3}");
  }

  return OrbitWitness{q,         seed,     tower,     orbit[0],     orbit,          candidates, small_orbit,
                      on_conic,  from_enumeration,    dim,          std::move(system), std::move(scan), lines,
                      only.form.normalized()};
}

Lemma31Report lemma31_check(std::uint64_t q, unsigned threads, std::uint64_t max_q) {
  const auto start = std::chrono::steady_clock::now();
  const auto tower = make_tower(q, max_q, "lemma check");
  const auto& base = tower->base();
  const Field& f = *base;

  linsys::LinearSystem system(base, {monomial(base, 3), monomial(base, 5), monomial(base, 7), monomial(base, 9)},
                              "<x^2y, y^2z, z^2x, xyz> " + qtag(q));
  const auto scan = linsys::scan_reducible_members(system, *tower, {threads, false});
  std::unordered_map<std::uint64_t, VerdictKind> kinds;
  for (const auto& r : scan.reducible) kinds.emplace(r.index.ordinal(q), r.verdict.kind);

  Lemma31Report report;
  report.q = q;
  report.members = system.member_count();
  report.reducible_members = scan.reducible.size();
  report.tuples = q * q * q * q - 1;
  std::vector<Elem> t(4);
  for (std::uint64_t code = 1; code <= report.tuples; ++code) {
    std::uint64_t rest = code;
    for (auto& e : t) {
      e = Elem{rest % q};
      rest /= q;
    }
    std::vector<Elem> canon = t;
    gf::canonicalize(f, canon);
    const auto it = kinds.find(gf::projective_ordinal(q, canon));
    const VerdictKind kind = it == kinds.end() ? VerdictKind::GeomIrreducible : it->second;
    ++report.tuples_by_kind[kind];
    if (kind != VerdictKind::GeomIrreducible && !f.mul(f.mul(t[0], t[1]), t[2]).is_zero()) {
      ++report.counterexamples;
      throw VerificationFailure(qtag(q) + ": (a,b,c,d) = (" + f.encode(t[0]) + "," + f.encode(t[1]) + "," +
                                f.encode(t[2]) + "," + f.encode(t[3]) + ") is geometrically reducible with abc != 0");
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cubics::construct
