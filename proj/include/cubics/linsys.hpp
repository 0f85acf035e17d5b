#pragma once

// Linear systems <F_0, ..., F_k> of plane cubics over F_q and the search for
// their geometrically reducible members.
//
// The scan works line by line instead of member by member. For a line l of
// P^2(F_{q^3}) with parametrization sA + tB, restricting F_i gives a binary
// cubic with four F_{q^3} coefficients, i.e. twelve F_q coordinates. A member
// sum a_i F_i vanishes on l iff sum a_i (row_i) = 0, so the members divisible
// by l are the nonzero vectors of the left kernel of the (k+1) x 12 matrix
// over F_q. Every geometrically reducible member with F_q coefficients has a
// linear factor over F_{q^3} (see classify.hpp), so the union over all lines
// is exactly the reducible set.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cubics/classify.hpp"
#include "cubics/forms.hpp"
#include "cubics/gf/tower.hpp"

namespace cubics::linsys {

using forms::CubicForm;
using forms::LinearForm;
using forms::ProjectivePoint;
using gf::Elem;
using gf::FieldPtr;

// Canonical coefficient tuple [a_0 : ... : a_k] of a member.
struct MemberIndex {
  std::vector<Elem> coeffs;

  // Position in the projective enumeration over a field of size m.
  std::uint64_t ordinal(std::uint64_t m) const;
  static MemberIndex at(std::uint64_t m, unsigned n, std::uint64_t ordinal);

  bool operator==(const MemberIndex&) const = default;
};

class LinearSystem {
 public:
  // Throws std::invalid_argument if the basis is empty, mixes fields, or is
  // linearly dependent.
  LinearSystem(FieldPtr base, std::vector<CubicForm> basis, std::string label = {});

  const FieldPtr& base() const { return base_; }
  const std::vector<CubicForm>& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  // Projective dimension k (basis has k + 1 forms).
  unsigned dimension() const { return static_cast<unsigned>(basis_.size()) - 1; }
  std::uint64_t member_count() const;

  CubicForm member(std::span<const Elem> coeffs) const;
  CubicForm member(const MemberIndex& index) const { return member(index.coeffs); }

  // Same basis with coefficients pushed through emb (which must start at base()).
  LinearSystem lifted(const gf::Embedding& emb, std::string label) const;

 private:
  FieldPtr base_;
  std::vector<CubicForm> basis_;
  std::string label_;
};

// Calls fn(index, form) for every member in enumeration order.
void for_each_member(const LinearSystem& S, const std::function<void(const MemberIndex&, const CubicForm&)>& fn);

struct ReducibleMember {
  MemberIndex index;
  CubicForm form;
  classify::CubicVerdict verdict;
};

struct ScanReport {
  std::string label;
  std::uint64_t member_count = 0;
  // Sorted by member ordinal.
  std::vector<ReducibleMember> reducible;
  std::uint64_t lines_total = 0;
  std::uint64_t lines_scanned = 0;
  // (line, member) incidences found by the kernel.
  std::uint64_t incidences = 0;
  unsigned threads = 1;
  bool early_abort = false;
  bool aborted = false;  // stopped at the first hit
  double seconds = 0;

  bool all_irreducible() const { return reducible.empty(); }
};

struct ScanOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool early_abort = false;
};

// System basis must live in tower.base().
ScanReport scan_reducible_members(const LinearSystem& S, const gf::Tower& tower, const ScanOptions& opts = {});

// Reference: classify every member with is_geometrically_irreducible.
ScanReport scan_naive(const LinearSystem& S, const gf::Tower& tower);

// Members divisible by one line of P^2(F_{q^3}), read from the kernel.
std::vector<MemberIndex> members_divisible_by(const LinearSystem& S, const gf::Tower& tower, const LinearForm& line);

// F_q-cubics through a full Frobenius orbit of six points of P^2(F_{q^6}).
// Throws std::invalid_argument if the points are not one orbit of size 6 and
// InternalError if fewer than four conditions survive. The basis is the
// nullspace basis of the vanishing conditions; its size is the exact dimension.
LinearSystem cubics_through_points(std::span<const ProjectivePoint> points, const gf::Tower& tower,
                                   std::string label = "cubics through orbit");

std::size_t independence_rank(std::span<const CubicForm> forms);

}  // namespace cubics::linsys
