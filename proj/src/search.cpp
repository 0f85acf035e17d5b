#include "cubics/search.hpp"

#include <chrono>
#include <stdexcept>

#include "cubics/error.hpp"
#include "cubics/rng.hpp"

namespace cubics::search {

using forms::CubicForm;

namespace {

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t candidate_key(std::uint64_t seed, std::uint64_t iteration) {
  return CounterRng::mix(seed ^ CounterRng::mix(iteration));
}

std::array<CubicForm, 4> draw_candidate(const gf::FieldPtr& base, std::uint64_t seed, std::uint64_t iteration) {
  CounterRng rng(candidate_key(seed, iteration));
  std::array<CubicForm, 4> out = {CubicForm(base), CubicForm(base), CubicForm(base), CubicForm(base)};
  for (auto& F : out)
    for (std::size_t m = 0; m < 10; ++m) F[m] = gf::Elem{rng.uniform(base->size())};
  return out;
}

SearchResult random_search(const SearchConfig& cfg) {
  if (cfg.max_iters == 0) throw std::invalid_argument("max_iters must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const auto tower = gf::Tower::make(cfg.q);
  SearchResult result;
  result.q = cfg.q;
  result.seed = cfg.seed;
  for (std::uint64_t it = 1; it <= cfg.max_iters; ++it) {
    ++result.iterations;
    const auto drawn = draw_candidate(tower->base(), cfg.seed, it);
    std::vector<CubicForm> basis(drawn.begin(), drawn.end());
    if (linsys::independence_rank(basis) != 4) {
      ++result.rejected_dependent;
      continue;
    }
    linsys::LinearSystem S(tower->base(), std::move(basis),
                           "search q=" + std::to_string(cfg.q) + " seed=" + std::to_string(cfg.seed) +
                               " iteration=" + std::to_string(it));
    const auto scan = linsys::scan_reducible_members(S, *tower, {cfg.threads, cfg.early_abort});
    if (!scan.reducible.empty()) {
      ++result.rejected_reducible;
      continue;
    }
    result.system = std::move(S);
    result.witness_iteration = it;
    break;
  }
  result.seconds = since(start);
  return result;
}

const std::vector<WitnessTableEntry>& witness_table() {
  static const std::vector<WitnessTableEntry> table = {
      {2,
       {"x^2 y+x^2 z+y^2 z", "x^3+yz^2", "x y^2+y^3+x y z+x z^2", "x^2 y+xy^2+x z^2+z^3"}},
      {3,
       {"y^3 + x^2z + y^2z + yz^2 + z^3", "x^3 - xy^2 + y^2 z - xz^2 + yz^2 - z^3",
        "x^3 - x^2 y - x y^2 + x z^2 - y z^2", "-x^3 - x^2 y + y^3 + x^2 z - xz^2"}},
      {4,
       {"x^2y + y^3 + x^2z + xyz + yz^2", "x^2y + xyz + y^2 z + z^3", "x^3 + xy^2 + y^2z + xz^2 + yz^2",
        "x^3 + yz^2"}},
      {5,
       {"2x^2y + xy^2 + y^3 + xz^2 + yz^2", "x^2y + 2xy^2 - 2y^3 - 2x^2z + 2y^2z - 2xz^2 - yz^2",
        "2x^3 + x^2y + xy^2 + y^3 - 2x^2z - xyz - y^2z + xz^2 + 2yz^2",
        "-2x^2y - 2xy^2 - x^2z - 2xyz + y^2z - xz^2 + 2z^3"}},
      {7,
       {"-x^3 - 3xy^2 + y^3 + 3y^2z + xz^2 - 2yz^2 + 3z^3", "3x^3 - 3x^2y - 3xy^2 - 3y^3 + xyz - 2y^2z - 2z^3",
        "x^3 - 2x^2y + y^3 - x^2z - 3xyz - 2y^2z + xz^2 - 3z^3",
        "-3x^3 - 2x^2y + 2xy^2 + 2y^3 - 2x^2z - 2y^2z - xz^2 + 3z^3"}},
      {8,
       {"x^2y + y^2z + xz^2 + yz^2", "x^2y + xy^2 + xz^2 + z^3", "x^3 + x^2y + y^2z + xz^2 + z^3",
        "x^2y + y^3 + x^2z + xyz + xz^2 + yz^2 + z^3"}},
      {9,
       {"-x^3 + x^2y + y^3 + x^2z + xyz - y^2z + xz^2 - yz^2", "xy^2 - x^2z - xyz - y^2z - z^3",
        "x^2y + xy^2 + x^2z + xz^2 + yz^2 + z^3", "xy^2 - y^3 - x^2z + y^2z - yz^2"}},
      {11,
       {"-3x^3 - 5xy^2 + 2x^2z + 4y^2z - 2xz^2 - 4z^3",
        "x^3 + xy^2 + 2y^3 + 3x^2z + 4xyz - y^2z - 3xz^2 + 2yz^2 - z^3",
        "5x^3 + 3x^2y + y^3 - 2x^2z - 5xyz - y^2z - 5xz^2 - 3yz^2 - 4z^3",
        "2x^3 - 3x^2y + 4xy^2 + 2y^3 - 5x^2z + y^2z - 2xz^2 - yz^2 + z^3"}},
  };
  return table;
}

bool TableReport::all_passed() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.passed) return false;
  return true;
}

TableRowReport verify_table_row(const WitnessTableEntry& entry, unsigned threads) {
  const auto tower = gf::Tower::make(entry.q);
  const auto& base = tower->base();
  TableRowReport row;
  row.q = entry.q;
  row.prime_field_coefficients = true;
  for (const char* text : entry.forms) {
    row.basis.push_back(forms::parse_cubic(text, base));
    for (auto c : row.basis.back().coeffs())
      if (!base->in_prime_field(c)) row.prime_field_coefficients = false;
  }
  row.rank = linsys::independence_rank(row.basis);
  if (!row.prime_field_coefficients) {
    row.failure = "coefficient outside the prime field";
    return row;
  }
  if (row.rank != 4) {
    row.failure = "basis has rank " + std::to_string(row.rank);
    return row;
  }
  linsys::LinearSystem S(base, row.basis, "table q=" + std::to_string(entry.q));
  row.scan = linsys::scan_reducible_members(S, *tower, {threads, false});
  if (!row.scan.reducible.empty()) {
    const auto& first = row.scan.reducible.front();
    std::string idx;
    for (auto e : first.index.coeffs) idx += (idx.empty() ? "" : ":") + base->encode(e);
    row.failure = std::to_string(row.scan.reducible.size()) + " reducible member(s), first [" + idx + "] = " +
                  forms::to_string(first.form);
    return row;
  }
  row.passed = true;
  return row;
}

TableReport verify_witness_table(unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  TableReport report;
  for (const auto& entry : witness_table()) report.rows.push_back(verify_table_row(entry, threads));
  report.seconds = since(start);
  return report;
}

ExtensionReport extension_check(const linsys::LinearSystem& S, unsigned k, unsigned threads, std::uint64_t max_size) {
  if (k == 0) throw std::invalid_argument("extension degree must be at least 1");
  const std::uint64_t q = S.base()->size();
  std::uint64_t qk = 1;
  for (unsigned i = 0; i < k; ++i) {
    qk *= q;
    if (qk > max_size)
      throw GuardExceeded("extension field of size " + std::to_string(q) + "^" + std::to_string(k) +
                          " exceeds the bound " + std::to_string(max_size));
  }
  const auto tower = gf::Tower::make(qk);
  const auto emb = gf::Embedding::find(S.base(), tower->base());
  const auto lifted = S.lifted(emb, S.label() + " over F_" + std::to_string(qk));
  ExtensionReport report;
  report.q = q;
  report.k = k;
  report.extension_size = qk;
  report.scan = linsys::scan_reducible_members(lifted, *tower, {threads, false});
  return report;
}

CensusReport census_count(std::uint64_t q, std::uint64_t max_q) {
  const auto start = std::chrono::steady_clock::now();
  if (q > max_q)
    throw GuardExceeded("census is limited to q <= " + std::to_string(max_q) + " (requested q = " +
                        std::to_string(q) + ")");
  const auto tower = gf::Tower::make(q);
  const auto set = classify::census_reducible(*tower, max_q);
  CensusReport report;
  report.q = q;
  report.total = forms::cubic_count(q);
  report.reducible = set.size();
  report.irreducible_fraction = static_cast<double>(report.total - report.reducible) / static_cast<double>(report.total);
  report.seconds = since(start);
  return report;
}

}  // namespace cubics::search
