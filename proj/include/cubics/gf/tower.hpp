#pragma once

// Embeddings between finite fields and the compatible tower
//
//   F_q  ->  F_{q^2}, F_{q^3}  ->  F_{q^6}
//
// Each level is its own Field (with its own lexicographically smallest
// modulus); the embeddings into F_{q^6} are chosen so that every path from
// F_q to F_{q^6} induces the same map. Subfields can therefore be handled
// either as standalone fields or as their images inside F_{q^6}.

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cubics/gf/field.hpp"
#include "cubics/gf/matrix.hpp"

namespace cubics::gf {

class Embedding {
 public:
  // Sends the generator t of src to the smallest-code root of src's modulus
  // in dst. Requires equal characteristic and deg(src) | deg(dst).
  static Embedding find(FieldPtr src, FieldPtr dst);

  // As find(), but restricted to roots whose embedding agrees with
  // sub_to_dst on the image of sub_to_src.
  static Embedding find_compatible(FieldPtr src, FieldPtr dst, const Embedding& sub_to_src,
                                   const Embedding& sub_to_dst);

  static Embedding identity(FieldPtr field);

  // Empty placeholder; only assignable.
  Embedding() = default;

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }
  Elem root() const { return root_; }

  Elem operator()(Elem a) const;
  // The unique source element mapping to b, if b lies in the image.
  std::optional<Elem> preimage(Elem b) const;

 private:
  Embedding(FieldPtr src, FieldPtr dst, Elem root);
  Elem evaluate(Elem a) const;

  FieldPtr src_, dst_;
  Elem root_;
  std::vector<Elem> image_;
  std::unordered_map<std::uint64_t, std::uint64_t> preimage_;
};

// Coordinates of elements of an extension E over a subfield K (given by an
// embedding K -> E) in the basis 1, g, ..., g^{r-1}, g the generator of E.
class SubfieldCoordinates {
 public:
  SubfieldCoordinates(Embedding embedding, std::uint64_t table_limit = std::uint64_t{1} << 20);

  unsigned relative_degree() const { return r_; }
  const Embedding& embedding() const { return emb_; }
  const FieldPtr& subfield() const { return emb_.source(); }
  const FieldPtr& extension() const { return emb_.target(); }
  bool has_table() const { return !table_.empty(); }

  // Writes r coordinates (as subfield elements) into out.
  void coordinates(Elem z, std::span<Elem> out) const;
  std::vector<Elem> coordinates(Elem z) const;
  // Coordinates via the linear-algebra route, bypassing the table.
  std::vector<Elem> coordinates_solve(Elem z) const;
  Elem combine(std::span<const Elem> coords) const;

  // Direct access to the precomputed table: r subfield codes per element.
  const std::uint32_t* table_row(Elem z) const { return table_.data() + z.code * r_; }

 private:
  Embedding emb_;
  unsigned r_;
  std::vector<Elem> basis_;  // g^j in the extension
  std::optional<Matrix> inverse_;  // over F_p
  FieldPtr prime_;
  std::vector<std::uint32_t> table_;
};

class Tower {
 public:
  // Tower over F_q for a prime power q.
  static std::shared_ptr<const Tower> make(std::uint64_t q, const FieldOptions& opts = {});

  std::uint64_t q() const { return q_; }
  std::uint64_t characteristic() const { return base_->characteristic(); }

  const FieldPtr& base() const { return base_; }
  const FieldPtr& quadratic() const { return quadratic_; }
  const FieldPtr& cubic() const { return cubic_; }
  const FieldPtr& top() const { return top_; }

  const Embedding& base_to_top() const { return base_to_top_; }
  const Embedding& base_to_quadratic() const { return base_to_quadratic_; }
  const Embedding& base_to_cubic() const { return base_to_cubic_; }
  const Embedding& quadratic_to_top() const { return quadratic_to_top_; }
  const Embedding& cubic_to_top() const { return cubic_to_top_; }

  // F_{q^3} over F_q; always tabulated, used by the line-scan kernel.
  const SubfieldCoordinates& cubic_coordinates() const { return *cubic_coords_; }
  // F_{q^6} over F_q.
  const SubfieldCoordinates& top_coordinates() const { return *top_coords_; }

  // z -> z^{q^i} in any field of the tower (z must belong to `field`).
  Elem frobenius(const Field& field, Elem z, unsigned i = 1) const;
  // Frobenius on F_{q^6}.
  Elem frobenius(Elem z_top, unsigned i = 1) const { return frobenius(*top_, z_top, i); }

  // True iff z (in F_{q^6}) lies in the subfield F_{q^d}; d must divide 6.
  bool in_subfield(Elem z_top, unsigned d) const;

  // First element of F_{q^3} (in code order) whose conjugates form an
  // F_q-basis of F_{q^3}.
  Elem find_normal_element() const;

 private:
  Tower() = default;

  std::uint64_t q_ = 0;
  FieldPtr base_, quadratic_, cubic_, top_;
  Embedding base_to_top_;
  Embedding base_to_quadratic_;
  Embedding base_to_cubic_;
  Embedding quadratic_to_top_;
  Embedding cubic_to_top_;
  std::unique_ptr<SubfieldCoordinates> cubic_coords_;
  std::unique_ptr<SubfieldCoordinates> top_coords_;
};

using TowerPtr = std::shared_ptr<const Tower>;

}  // namespace cubics::gf
