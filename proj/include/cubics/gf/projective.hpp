#pragma once

// Canonical enumeration of P^{n-1}(F) for a finite field F of size m.
//
// Tuples are canonical when their first nonzero entry is 1. The enumeration
// visits tuples by ascending position of that leading 1; entries after it run
// through all codes with the last entry varying fastest. For n = 3 this is
// [1:b:c] (b outer, c inner), then [0:1:c], then [0:0:1].

#include <cstdint>
#include <span>

#include "cubics/gf/field.hpp"

namespace cubics::gf {

// (m^n - 1) / (m - 1)
std::uint64_t projective_count(std::uint64_t m, unsigned n);

// Writes the canonical tuple with the given ordinal into out (out.size() = n).
void projective_tuple(std::uint64_t m, std::uint64_t ordinal, std::span<Elem> out);

// Ordinal of a canonical tuple; throws if the tuple is zero or not canonical.
std::uint64_t projective_ordinal(std::uint64_t m, std::span<const Elem> tuple);

// Scales v so that its first nonzero entry is 1. Returns false (leaving v
// untouched) when v is zero.
bool canonicalize(const Field& f, std::span<Elem> v);

}  // namespace cubics::gf
