#pragma once

// Randomized search for 3-dimensional systems whose F_q-members are all
// geometrically irreducible, the published witness table, and checks of a
// system over extensions F_{q^k}.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubics/classify.hpp"
#include "cubics/gf/tower.hpp"
#include "cubics/linsys.hpp"

namespace cubics::search {

struct SearchConfig {
  std::uint64_t q = 2;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 100000;
  unsigned threads = 0;
  bool early_abort = true;
};

struct SearchResult {
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  std::optional<linsys::LinearSystem> system;
  std::uint64_t iterations = 0;           // quadruples drawn, including rejected ones
  std::uint64_t rejected_dependent = 0;
  std::uint64_t rejected_reducible = 0;
  std::uint64_t witness_iteration = 0;    // 1-based; 0 when nothing was found
  double seconds = 0;
};

// Candidate i (1-based) is drawn from its own stream
// CounterRng(candidate_key(seed, i)): forms F_0..F_3 in turn, and for each
// form the coefficients c_0..c_9 as uniform field codes. Quadruples of rank
// < 4 are rejected. Throws std::invalid_argument when max_iters == 0.
SearchResult random_search(const SearchConfig& cfg);

std::uint64_t candidate_key(std::uint64_t seed, std::uint64_t iteration);
// The four forms drawn at a given 1-based iteration of random_search with
// this seed, independent of whether they were accepted.
std::array<forms::CubicForm, 4> draw_candidate(const gf::FieldPtr& base, std::uint64_t seed, std::uint64_t iteration);

struct WitnessTableEntry {
  std::uint64_t q;
  std::array<const char*, 4> forms;
};

// Eight systems, one for each q in {2, 3, 4, 5, 7, 8, 9, 11}, in the
// polynomial syntax of forms::parse_cubic.
const std::vector<WitnessTableEntry>& witness_table();

struct TableRowReport {
  std::uint64_t q = 0;
  std::vector<forms::CubicForm> basis;
  std::size_t rank = 0;
  bool prime_field_coefficients = false;
  linsys::ScanReport scan;
  bool passed = false;
  std::string failure;  // empty when passed
};

struct TableReport {
  std::vector<TableRowReport> rows;
  bool all_passed() const;
  double seconds = 0;
};

// Row failures are recorded in the report rather than thrown.
TableReport verify_witness_table(unsigned threads = 0);
TableRowReport verify_table_row(const WitnessTableEntry& entry, unsigned threads = 0);

inline constexpr std::uint64_t kExtensionBound = 16;

struct ExtensionReport {
  std::uint64_t q = 0;
  unsigned k = 0;
  std::uint64_t extension_size = 0;  // q^k
  linsys::ScanReport scan;
  bool passed() const { return scan.reducible.empty(); }
};

// Reads S over F_{q^k} and scans its F_{q^k}-members. Throws GuardExceeded
// when q^k exceeds max_size.
ExtensionReport extension_check(const linsys::LinearSystem& S, unsigned k, unsigned threads = 0,
                                std::uint64_t max_size = kExtensionBound);

struct CensusReport {
  std::uint64_t q = 0;
  std::uint64_t total = 0;       // normalized cubics, (q^10 - 1)/(q - 1)
  std::uint64_t reducible = 0;   // geometrically reducible among them
  double irreducible_fraction = 0;
  double seconds = 0;
};

CensusReport census_count(std::uint64_t q, std::uint64_t max_q = classify::kDefaultCensusBound);

}  // namespace cubics::search
