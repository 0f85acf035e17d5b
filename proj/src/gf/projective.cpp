#include "cubics/gf/projective.hpp"

#include <stdexcept>

namespace cubics::gf {

std::uint64_t projective_count(std::uint64_t m, unsigned n) {
  std::uint64_t total = 0, block = 1;
  for (unsigned i = 0; i < n; ++i) {
    total += block;
    block *= m;
  }
  return total;
}

void projective_tuple(std::uint64_t m, std::uint64_t ordinal, std::span<Elem> out) {
  const unsigned n = static_cast<unsigned>(out.size());
  // Block for leading position `lead` has m^(n-1-lead) tuples.
  for (unsigned lead = 0; lead < n; ++lead) {
    std::uint64_t block = 1;
    for (unsigned i = lead + 1; i < n; ++i) block *= m;
    if (ordinal < block) {
      for (unsigned i = 0; i < lead; ++i) out[i] = Elem{0};
      out[lead] = Elem{1};
      for (unsigned i = n; i-- > lead + 1;) {
        out[i] = Elem{ordinal % m};
        ordinal /= m;
      }
      return;
    }
    ordinal -= block;
  }
  throw std::out_of_range("projective ordinal out of range");
}

std::uint64_t projective_ordinal(std::uint64_t m, std::span<const Elem> tuple) {
  const unsigned n = static_cast<unsigned>(tuple.size());
  std::uint64_t offset = 0;
  for (unsigned lead = 0; lead < n; ++lead) {
    std::uint64_t block = 1;
    for (unsigned i = lead + 1; i < n; ++i) block *= m;
    if (tuple[lead].is_zero()) {
      offset += block;
      continue;
    }
    if (tuple[lead].code != 1) throw std::invalid_argument("tuple is not canonical");
    std::uint64_t v = 0;
    for (unsigned i = lead + 1; i < n; ++i) v = v * m + tuple[i].code;
    return offset + v;
  }
  throw std::invalid_argument("zero tuple has no projective ordinal");
}

bool canonicalize(const Field& f, std::span<Elem> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (v[i] == f.one()) return true;
    const Elem inv = f.inv(v[i]);
    for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(v[j], inv);
    return true;
  }
  return false;
}

}  // namespace cubics::gf
