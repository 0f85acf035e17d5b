#include "cubics/io.hpp"

#include <stdexcept>

namespace cubics::io {

using classify::CubicVerdict;
using forms::CubicForm;
using forms::LinearForm;

namespace {

json elems_to_json(const gf::Field& f, std::span<const gf::Elem> v) {
  json out = json::array();
  for (auto e : v) out.push_back(f.encode(e));
  return out;
}

std::vector<gf::Elem> elems_from_json(const json& j, const gf::Field& f) {
  std::vector<gf::Elem> out;
  for (const auto& e : j) out.push_back(f.decode(e.get<std::string>()));
  return out;
}

json scan_body(const linsys::ScanReport& r) {
  json j;
  j["label"] = r.label;
  j["member_count"] = r.member_count;
  j["reducible_count"] = r.reducible.size();
  j["lines_total"] = r.lines_total;
  j["lines_scanned"] = r.lines_scanned;
  j["incidences"] = r.incidences;
  j["threads"] = r.threads;
  j["early_abort"] = r.early_abort;
  j["aborted"] = r.aborted;
  j["seconds"] = r.seconds;
  json members = json::array();
  for (const auto& m : r.reducible) {
    const auto& f = m.form.f();
    members.push_back({{"index", elems_to_json(f, m.index.coeffs)},
                       {"ordinal", m.index.ordinal(f.size())},
                       {"form", form_to_json(m.form)},
                       {"verdict", verdict_to_json(m.verdict)}});
  }
  j["reducible"] = std::move(members);
  return j;
}

std::string kind_name(classify::VerdictKind k) { return std::string(classify::to_string(k)); }

}  // namespace

json field_to_json(const gf::Field& f) {
  std::vector<std::uint64_t> modulus(f.modulus().begin(), f.modulus().end());
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"size", f.size()}, {"modulus", modulus}};
}

json form_to_json(const CubicForm& F) { return {{"positional", forms::to_positional(F)}, {"text", forms::to_string(F)}}; }

CubicForm form_from_json(const json& j, const gf::FieldPtr& field) {
  return forms::parse_positional<CubicForm>(j.at("positional").get<std::string>(), field);
}

json line_to_json(const LinearForm& L) {
  return {{"positional", forms::to_positional(L)}, {"text", forms::to_string(L)}, {"bracket", forms::to_bracket(L)}};
}

LinearForm line_from_json(const json& j, const gf::FieldPtr& field) {
  return forms::parse_positional<LinearForm>(j.at("positional").get<std::string>(), field);
}

json point_to_json(const forms::ProjectivePoint& P) {
  return {{"positional", forms::to_positional(P)}, {"bracket", forms::to_bracket(P)}};
}

json system_to_json(const linsys::LinearSystem& S) {
  json basis = json::array();
  for (const auto& F : S.basis()) basis.push_back(form_to_json(F));
  return {{"label", S.label()}, {"q", S.base()->size()}, {"field", field_to_json(*S.base())}, {"basis", basis}};
}

linsys::LinearSystem system_from_json(const json& j) {
  const auto q = j.at("q").get<std::uint64_t>();
  const auto pp = gf::factor_prime_power(q);
  if (!pp) throw std::invalid_argument("system JSON: q is not a prime power");
  const auto field = gf::Field::make(pp.p, pp.e);
  if (j.contains("field")) {
    const auto modulus = j["field"].at("modulus").get<std::vector<std::uint64_t>>();
    if (!std::equal(modulus.begin(), modulus.end(), field->modulus().begin(), field->modulus().end()))
      throw std::invalid_argument("system JSON: field modulus differs from the canonical one");
  }
  std::vector<CubicForm> basis;
  for (const auto& F : j.at("basis")) basis.push_back(form_from_json(F, field));
  return linsys::LinearSystem(field, std::move(basis), j.value("label", std::string()));
}

json verdict_to_json(const CubicVerdict& v) {
  json lines = json::array();
  for (const auto& w : v.factors) {
    json l = line_to_json(w.line);
    l["degree"] = w.degree;
    lines.push_back(std::move(l));
  }
  json j = {{"kind", kind_name(v.kind)}, {"witness_lines", lines}, {"orbit", v.orbit}};
  if (v.cofactor) j["cofactor"] = forms::to_positional(*v.cofactor);
  return j;
}

CubicVerdict verdict_from_json(const json& j, const gf::Tower& tower) {
  CubicVerdict v;
  v.kind = classify::verdict_kind_from_string(j.at("kind").get<std::string>());
  v.orbit = j.at("orbit").get<bool>();
  for (const auto& l : j.at("witness_lines")) {
    const auto degree = l.at("degree").get<unsigned>();
    if (degree != 1 && degree != 3) throw std::invalid_argument("verdict JSON: witness degree must be 1 or 3");
    v.factors.push_back({line_from_json(l, degree == 1 ? tower.base() : tower.cubic()), degree});
  }
  if (j.contains("cofactor"))
    v.cofactor = forms::parse_positional<forms::ConicForm>(j["cofactor"].get<std::string>(), tower.base());
  return v;
}

json scan_to_json(const linsys::LinearSystem& S, const linsys::ScanReport& r) {
  json j = scan_body(r);
  j["system"] = system_to_json(S);
  return j;
}

linsys::ScanReport scan_from_json(const json& j, const gf::Tower& tower) {
  linsys::ScanReport r;
  r.label = j.at("label").get<std::string>();
  r.member_count = j.at("member_count").get<std::uint64_t>();
  r.lines_total = j.at("lines_total").get<std::uint64_t>();
  r.lines_scanned = j.at("lines_scanned").get<std::uint64_t>();
  r.incidences = j.at("incidences").get<std::uint64_t>();
  r.threads = j.at("threads").get<unsigned>();
  r.early_abort = j.at("early_abort").get<bool>();
  r.aborted = j.at("aborted").get<bool>();
  r.seconds = j.at("seconds").get<double>();
  const auto& base = tower.base();
  for (const auto& m : j.at("reducible")) {
    r.reducible.push_back({linsys::MemberIndex{elems_from_json(m.at("index"), *base)},
                           form_from_json(m.at("form"), base), verdict_from_json(m.at("verdict"), tower)});
  }
  if (j.at("reducible_count").get<std::size_t>() != r.reducible.size())
    throw std::invalid_argument("scan JSON: reducible_count does not match the member list");
  return r;
}

void scan_to_csv(const linsys::LinearSystem& S, const linsys::ScanReport& r, std::ostream& out, bool header) {
  if (header) out << "system,member_index,member_ordinal,form,kind,witness_lines,orbit\n";
  for (const auto& m : r.reducible) {
    const auto& f = m.form.f();
    std::string idx, lines;
    for (auto e : m.index.coeffs) idx += (idx.empty() ? "" : ":") + f.encode(e);
    for (const auto& w : m.verdict.factors)
      lines += (lines.empty() ? "" : " ") + forms::to_bracket(w.line) + "/" + std::to_string(w.degree);
    out << '"' << S.label() << "\",[" << idx << "]," << m.index.ordinal(f.size()) << ",\"" << forms::to_string(m.form)
        << "\"," << classify::to_string(m.verdict.kind) << ",\"" << lines << "\"," << (m.verdict.orbit ? "true" : "false")
        << '\n';
  }
}

json explicit_to_json(const construct::ExplicitWitness& w) {
  const auto& ext = *w.tower->cubic();
  json M = json::array();
  for (std::size_t r = 0; r < 3; ++r) M.push_back(elems_to_json(ext, w.coordinate_change.row(r)));
  json descent = json::array();
  for (const auto& R : w.descent) descent.push_back(form_to_json(R));
  return {{"q", w.q},
          {"base_field", field_to_json(*w.tower->base())},
          {"cubic_field", field_to_json(ext)},
          {"base_to_cubic_root", ext.encode(w.tower->base_to_cubic().root())},
          {"alpha", ext.encode(w.alpha)},
          {"coordinate_change", M},
          {"F", form_to_json(w.F)},
          {"G", form_to_json(w.G)},
          {"H", form_to_json(w.H)},
          {"T", form_to_json(w.T)},
          {"descent", descent},
          {"scan", scan_to_json(w.system, w.scan)}};
}

json orbit_to_json(const construct::OrbitWitness& w) {
  json orbit = json::array();
  for (const auto& P : w.orbit) orbit.push_back(point_to_json(P));
  json lines = json::array();
  for (const auto& l : w.opposite_lines) lines.push_back(line_to_json(l));
  return {{"q", w.q},
          {"seed", w.seed},
          {"base_field", field_to_json(*w.tower->base())},
          {"top_field", field_to_json(*w.tower->top())},
          {"base_to_top_root", w.tower->top()->encode(w.tower->base_to_top().root())},
          {"point", point_to_json(w.point)},
          {"orbit", orbit},
          {"candidates", w.candidates},
          {"rejected_small_orbit", w.rejected_small_orbit},
          {"rejected_on_conic", w.rejected_on_conic},
          {"from_enumeration", w.from_enumeration},
          {"through_dimension", w.through_dimension},
          {"opposite_lines", lines},
          {"reducible_member", form_to_json(w.reducible_member)},
          {"scan", scan_to_json(w.system, w.scan)}};
}

json lemma_to_json(const construct::Lemma31Report& r) {
  json kinds = json::object();
  for (const auto& [k, n] : r.tuples_by_kind) kinds[kind_name(k)] = n;
  return {{"q", r.q},
          {"tuples", r.tuples},
          {"members", r.members},
          {"reducible_members", r.reducible_members},
          {"tuples_by_kind", kinds},
          {"counterexamples", r.counterexamples},
          {"seconds", r.seconds}};
}

json table_to_json(const search::TableReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json basis = json::array();
    for (const auto& F : row.basis) basis.push_back(form_to_json(F));
    json j = {{"q", row.q},
              {"basis", basis},
              {"rank", row.rank},
              {"prime_field_coefficients", row.prime_field_coefficients},
              {"passed", row.passed},
              {"failure", row.failure}};
    if (row.scan.member_count) j["scan"] = scan_body(row.scan);
    rows.push_back(std::move(j));
  }
  return {{"rows", rows}, {"all_passed", r.all_passed()}, {"seconds", r.seconds}};
}

json search_to_json(const search::SearchResult& r) {
  json j = {{"q", r.q},
            {"seed", r.seed},
            {"found", r.system.has_value()},
            {"iterations", r.iterations},
            {"rejected_dependent", r.rejected_dependent},
            {"rejected_reducible", r.rejected_reducible},
            {"witness_iteration", r.witness_iteration},
            {"seconds", r.seconds}};
  if (r.system) j["system"] = system_to_json(*r.system);
  return j;
}

json extension_to_json(const linsys::LinearSystem& S, const search::ExtensionReport& r) {
  return {{"q", r.q},
          {"k", r.k},
          {"extension_size", r.extension_size},
          {"passed", r.passed()},
          {"system", system_to_json(S)},
          {"scan", scan_body(r.scan)}};
}

json census_to_json(const search::CensusReport& r) {
  return {{"q", r.q},
          {"total", r.total},
          {"reducible", r.reducible},
          {"irreducible_fraction", r.irreducible_fraction},
          {"seconds", r.seconds}};
}

json witness_log_entry(const search::SearchResult& r) {
  json forms = json::array();
  if (r.system)
    for (const auto& F : r.system->basis()) forms.push_back(form_to_json(F));
  return {{"q", r.q}, {"seed", r.seed}, {"iteration", r.witness_iteration}, {"forms", forms}};
}

}  // namespace cubics::io
