#pragma once

// JSON and CSV views of forms, systems and reports.
//
// Forms are written in both codecs, {"positional": "c0,...,c9", "text": "..."};
// parsers read the positional one. Elements use the field's digit codec.

#include <ostream>
#include <string>

#include <json.hpp>

#include "cubics/classify.hpp"
#include "cubics/construct.hpp"
#include "cubics/linsys.hpp"
#include "cubics/search.hpp"

namespace cubics::io {

using nlohmann::json;

json field_to_json(const gf::Field& f);

json form_to_json(const forms::CubicForm& F);
forms::CubicForm form_from_json(const json& j, const gf::FieldPtr& field);

json line_to_json(const forms::LinearForm& L);
forms::LinearForm line_from_json(const json& j, const gf::FieldPtr& field);

json point_to_json(const forms::ProjectivePoint& P);

json system_to_json(const linsys::LinearSystem& S);
// The field is rebuilt from "q" (smallest modulus) and checked against the
// recorded modulus.
linsys::LinearSystem system_from_json(const json& j);

json verdict_to_json(const classify::CubicVerdict& v);
classify::CubicVerdict verdict_from_json(const json& j, const gf::Tower& tower);

json scan_to_json(const linsys::LinearSystem& S, const linsys::ScanReport& r);
// tower must be the one over the system's base field.
linsys::ScanReport scan_from_json(const json& j, const gf::Tower& tower);
// One row per member that is not geometrically irreducible.
void scan_to_csv(const linsys::LinearSystem& S, const linsys::ScanReport& r, std::ostream& out, bool header = true);

json explicit_to_json(const construct::ExplicitWitness& w);
json orbit_to_json(const construct::OrbitWitness& w);
json lemma_to_json(const construct::Lemma31Report& r);
json table_to_json(const search::TableReport& r);
json search_to_json(const search::SearchResult& r);
json extension_to_json(const linsys::LinearSystem& S, const search::ExtensionReport& r);
json census_to_json(const search::CensusReport& r);

// One line of the newline-delimited witness log.
json witness_log_entry(const search::SearchResult& r);

}  // namespace cubics::io
