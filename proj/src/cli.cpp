#include "cubics/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>

#include "cubics/error.hpp"
#include "cubics/io.hpp"

namespace cubics::cli {

namespace {

using io::json;

struct Flags {
  std::uint64_t q = 0;
  std::uint64_t seed = 0;
  unsigned k = 1;
  unsigned threads = 0;
  std::optional<std::uint64_t> max_iters;
  std::string out;
  std::string format = "json";
  std::string form;
  std::string forms;
  std::uint64_t row = 0;
  std::string witness_log;
  bool no_early_abort = false;
  bool timing = false;
};

// Report in all three formats; only the requested one is rendered.
struct Report {
  json data;
  std::function<void(std::ostream&)> csv;
  std::function<void(std::ostream&)> text;
  // Set when the report itself records a failed check.
  int code = kOk;
  std::string failure;
};

gf::TowerPtr tower_for(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("--q is required and must be a prime power");
  if (!gf::factor_prime_power(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return gf::Tower::make(q);
}

std::string join_index(const gf::Field& f, const linsys::MemberIndex& idx) {
  std::string s;
  for (auto e : idx.coeffs) s += (s.empty() ? "" : ":") + f.encode(e);
  return "[" + s + "]";
}

void scan_text(std::ostream& os, const linsys::ScanReport& r) {
  os << "members: " << r.member_count << ", geometrically reducible: " << r.reducible.size() << ", lines scanned: "
     << r.lines_scanned << "/" << r.lines_total << "\n";
  for (const auto& m : r.reducible) {
    os << "  " << join_index(m.form.f(), m.index) << "  " << forms::to_string(m.form) << "  "
       << classify::to_string(m.verdict.kind) << "\n";
    for (const auto& w : m.verdict.factors)
      os << "    line " << forms::to_string(w.line) << " (degree " << w.degree << ")\n";
  }
}

std::vector<forms::CubicForm> parse_form_list(const std::string& text, const gf::FieldPtr& field) {
  std::vector<forms::CubicForm> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(forms::parse_cubic(item, field));
  return out;
}

Report cmd_verify_table(const Flags& f) {
  search::TableReport r;
  const auto start = std::chrono::steady_clock::now();
  bool matched = false;
  for (const auto& entry : search::witness_table()) {
    if (f.q && entry.q != f.q) continue;
    matched = true;
    r.rows.push_back(search::verify_table_row(entry, f.threads));
  }
  if (!matched) throw std::invalid_argument("no table row for q = " + std::to_string(f.q));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Report rep;
  rep.data = io::table_to_json(r);
  rep.csv = [r](std::ostream& os) {
    os << "q,members,reducible,rank,passed,seconds\n";
    for (const auto& row : r.rows)
      os << row.q << ',' << row.scan.member_count << ',' << row.scan.reducible.size() << ',' << row.rank << ','
         << (row.passed ? "true" : "false") << ',' << row.scan.seconds << '\n';
  };
  rep.text = [r](std::ostream& os) {
    for (const auto& row : r.rows)
      os << "q=" << row.q << ": " << (row.passed ? "PASS" : "FAIL") << "  " << row.scan.member_count
         << " members, " << row.scan.reducible.size() << " geometrically reducible"
         << (row.failure.empty() ? "" : "  (" + row.failure + ")") << "\n";
  };
  for (const auto& row : r.rows)
    if (!row.passed && rep.code == kOk) {
      rep.code = kVerification;
      rep.failure = "table row q=" + std::to_string(row.q) + " failed: " + row.failure;
    }
  return rep;
}

Report cmd_explicit(const Flags& f) {
  tower_for(f.q);
  auto w = std::make_shared<construct::ExplicitWitness>(construct::explicit_construction(f.q, f.threads));
  Report rep;
  rep.data = io::explicit_to_json(*w);
  rep.csv = [w](std::ostream& os) { io::scan_to_csv(w->system, w->scan, os); };
  rep.text = [w](std::ostream& os) {
    const auto& ext = *w->tower->cubic();
    os << "q=" << w->q << "  alpha=" << ext.encode(w->alpha) << " in " << ext.describe() << "\n";
    os << "F = " << forms::to_string(w->F) << "\nG = " << forms::to_string(w->G) << "\nH = " << forms::to_string(w->H)
       << "\nT = " << forms::to_string(w->T) << "\n";
    for (std::size_t i = 0; i < w->descent.size(); ++i)
      os << "R" << i << " = " << forms::to_string(w->descent[i]) << "\n";
    scan_text(os, w->scan);
  };
  return rep;
}

Report cmd_orbit(const Flags& f) {
  tower_for(f.q);
  const std::uint64_t budget = f.max_iters.value_or(construct::kOrbitBudget);
  auto w = std::make_shared<construct::OrbitWitness>(
      construct::galois_orbit_construction(f.q, f.seed, f.threads, budget));
  Report rep;
  rep.data = io::orbit_to_json(*w);
  rep.csv = [w](std::ostream& os) { io::scan_to_csv(w->system, w->scan, os); };
  rep.text = [w](std::ostream& os) {
    os << "q=" << w->q << " seed=" << w->seed << "  P = " << forms::to_bracket(w->point) << " over "
       << w->tower->top()->describe() << "  (" << w->candidates << " candidates)\n";
    os << "through-orbit dimension: " << w->through_dimension << "\n";
    for (std::size_t i = 0; i < w->system.basis().size(); ++i)
      os << "F" << i << " = " << forms::to_string(w->system.basis()[i]) << "\n";
    scan_text(os, w->scan);
  };
  return rep;
}

Report cmd_lemma31(const Flags& f) {
  tower_for(f.q);
  const auto r = construct::lemma31_check(f.q, f.threads);
  Report rep;
  rep.data = io::lemma_to_json(r);
  rep.csv = [r](std::ostream& os) {
    os << "q,kind,tuples\n";
    for (const auto& [k, n] : r.tuples_by_kind) os << r.q << ',' << classify::to_string(k) << ',' << n << '\n';
  };
  rep.text = [r](std::ostream& os) {
    os << "q=" << r.q << ": " << r.tuples << " tuples, " << r.counterexamples << " counterexamples\n";
    for (const auto& [k, n] : r.tuples_by_kind) os << "  " << classify::to_string(k) << ": " << n << "\n";
  };
  return rep;
}

Report cmd_search(const Flags& f) {
  tower_for(f.q);
  search::SearchConfig cfg;
  cfg.q = f.q;
  cfg.seed = f.seed;
  if (f.max_iters) cfg.max_iters = *f.max_iters;
  cfg.threads = f.threads;
  cfg.early_abort = !f.no_early_abort;
  auto r = std::make_shared<search::SearchResult>(search::random_search(cfg));
  if (r->system && !f.witness_log.empty()) {
    std::ofstream log(f.witness_log, std::ios::app);
    if (!log) throw std::invalid_argument("cannot open witness log " + f.witness_log);
    log << io::witness_log_entry(*r).dump() << '\n';
  }
  Report rep;
  rep.data = io::search_to_json(*r);
  if (!r->system) {
    rep.code = kBudget;
    rep.failure = "no witness within " + std::to_string(r->iterations) + " iterations";
  }
  rep.csv = [r](std::ostream& os) {
    os << "q,seed,found,iteration,F0,F1,F2,F3\n";
    os << r->q << ',' << r->seed << ',' << (r->system ? "true" : "false") << ',' << r->witness_iteration;
    if (r->system)
      for (const auto& F : r->system->basis()) os << ",\"" << forms::to_string(F) << '"';
    else
      os << ",,,,";
    os << '\n';
  };
  rep.text = [r](std::ostream& os) {
    os << "q=" << r->q << " seed=" << r->seed << ": ";
    if (!r->system) {
      os << "no witness in " << r->iterations << " iterations\n";
      return;
    }
    os << "witness at iteration " << r->witness_iteration << "\n";
    for (std::size_t i = 0; i < 4; ++i) os << "F" << i << " = " << forms::to_string(r->system->basis()[i]) << "\n";
  };
  return rep;
}

Report cmd_extend(const Flags& f) {
  std::vector<forms::CubicForm> basis;
  gf::FieldPtr base;
  std::string label;
  if (f.row) {
    const auto& table = search::witness_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.q == f.row; });
    if (it == table.end()) throw std::invalid_argument("no table row for q = " + std::to_string(f.row));
    base = tower_for(f.q ? f.q : f.row)->base();
    for (const char* text : it->forms) basis.push_back(forms::parse_cubic(text, base));
    label = "table row q=" + std::to_string(f.row) + " over F_" + std::to_string(base->size());
  } else {
    if (f.forms.empty()) throw std::invalid_argument("extend needs --row or --forms");
    base = tower_for(f.q)->base();
    basis = parse_form_list(f.forms, base);
    label = "forms over F_" + std::to_string(base->size());
  }
  auto S = std::make_shared<linsys::LinearSystem>(base, basis, label);
  auto r = std::make_shared<search::ExtensionReport>(search::extension_check(*S, f.k, f.threads));
  Report rep;
  rep.data = io::extension_to_json(*S, *r);
  rep.csv = [S, r](std::ostream& os) { io::scan_to_csv(*S, r->scan, os); };
  rep.text = [r](std::ostream& os) {
    os << "q=" << r->q << " k=" << r->k << " (F_" << r->extension_size << "): " << (r->passed() ? "PASS" : "FAIL")
       << "\n";
    scan_text(os, r->scan);
  };
  return rep;
}

Report cmd_census(const Flags& f) {
  tower_for(f.q);
  const auto r = search::census_count(f.q);
  Report rep;
  rep.data = io::census_to_json(r);
  rep.csv = [r](std::ostream& os) {
    os << "q,total,reducible,irreducible_fraction\n" << r.q << ',' << r.total << ',' << r.reducible << ','
       << r.irreducible_fraction << '\n';
  };
  rep.text = [r](std::ostream& os) {
    os << "q=" << r.q << ": " << r.reducible << " of " << r.total
       << " normalized cubics are geometrically reducible (irreducible fraction " << r.irreducible_fraction << ")\n";
  };
  return rep;
}

Report cmd_classify(const Flags& f) {
  const auto tower = tower_for(f.q);
  if (f.form.empty()) throw std::invalid_argument("classify needs --form");
  const auto F = forms::parse_cubic(f.form, tower->base());
  const auto v = classify::classify(F, *tower);
  json j = {{"q", f.q}, {"form", io::form_to_json(F)}, {"verdict", io::verdict_to_json(v)}};
  Report rep;
  rep.data = j;
  rep.csv = [F, v](std::ostream& os) {
    std::string lines;
    for (const auto& w : v.factors)
      lines += (lines.empty() ? "" : " ") + forms::to_bracket(w.line) + "/" + std::to_string(w.degree);
    os << "form,kind,witness_lines,orbit\n\"" << forms::to_string(F) << "\"," << classify::to_string(v.kind) << ",\""
       << lines << "\"," << (v.orbit ? "true" : "false") << '\n';
  };
  rep.text = [F, v](std::ostream& os) {
    os << forms::to_string(F) << ": " << classify::to_string(v.kind) << "\n";
    for (const auto& w : v.factors) os << "  line " << forms::to_string(w.line) << " (degree " << w.degree << ")\n";
    if (v.cofactor) os << "  cofactor " << forms::to_string(*v.cofactor) << "\n";
  };
  return rep;
}

// Wall-clock fields would make otherwise identical runs differ.
void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [key, value] : j.items()) strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_timing(value);
  }
}

void emit(const Report& rep, const Flags& f, std::ostream& out) {
  std::ostringstream body;
  if (f.format == "json") {
    json data = rep.data;
    if (!f.timing) strip_timing(data);
    body << data.dump(2) << '\n';
  } else if (f.format == "csv") {
    rep.csv(body);
  } else {
    rep.text(body);
  }
  if (f.out.empty()) {
    out << body.str();
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw std::invalid_argument("cannot write " + f.out);
  file << body.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear systems of plane cubics over finite fields", "cubics"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", f.threads, "worker threads for line scans (0: all cores)");
    sub->add_option("--out", f.out, "write the report to this file");
    sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--timing", f.timing, "keep wall-clock fields in JSON output");
  };
  auto* verify = app.add_subcommand("verify-table", "check the eight witness systems");
  verify->add_option("--q", f.q, "only the row for this q");
  auto* expl = app.add_subcommand("explicit", "normal-basis construction with one reducible member");
  expl->add_option("--q", f.q, "field size")->required();
  auto* orbit = app.add_subcommand("orbit", "construction from a degree-6 Galois orbit");
  orbit->add_option("--q", f.q, "field size")->required();
  orbit->add_option("--seed", f.seed, "seed for the point search");
  orbit->add_option("--max-iters", f.max_iters, "candidate point budget");
  auto* lemma = app.add_subcommand("lemma31", "reducible members of <x^2y, y^2z, z^2x, xyz> have abc = 0");
  lemma->add_option("--q", f.q, "field size")->required();
  auto* srch = app.add_subcommand("search", "random search for an all-irreducible system");
  srch->add_option("--q", f.q, "field size")->required();
  srch->add_option("--seed", f.seed, "search seed");
  srch->add_option("--max-iters", f.max_iters, "candidate budget");
  srch->add_option("--witness-log", f.witness_log, "append the witness to this NDJSON file");
  srch->add_flag("--no-early-abort", f.no_early_abort, "scan every candidate completely");
  auto* ext = app.add_subcommand("extend", "scan a system over F_{q^k}");
  ext->add_option("--q", f.q, "base field size (defaults to the row's q)");
  ext->add_option("--k", f.k, "extension degree");
  ext->add_option("--row", f.row, "use the witness table row for this q");
  ext->add_option("--forms", f.forms, "four forms separated by ';'");
  auto* census = app.add_subcommand("census", "count geometrically reducible cubics");
  census->add_option("--q", f.q, "field size")->required();
  auto* cls = app.add_subcommand("classify", "classify one cubic");
  cls->add_option("--q", f.q, "field size")->required();
  cls->add_option("--form", f.form, "cubic, e.g. \"x^3+y*z^2\"")->required();
  for (auto* sub : {verify, expl, orbit, lemma, srch, ext, census, cls}) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Report rep;
    if (*verify) rep = cmd_verify_table(f);
    else if (*expl) rep = cmd_explicit(f);
    else if (*orbit) rep = cmd_orbit(f);
    else if (*lemma) rep = cmd_lemma31(f);
    else if (*srch) rep = cmd_search(f);
    else if (*ext) rep = cmd_extend(f);
    else if (*census) rep = cmd_census(f);
    else rep = cmd_classify(f);
    emit(rep, f, out);
    if (rep.code != kOk) err << "error: " << (rep.code == kBudget ? "budget" : "verification") << ": " << rep.failure << "\n";
    return rep.code;
  } catch (const VerificationFailure& e) {
    err << "error: verification: " << e.what() << "\n";
    return kVerification;
  } catch (const BudgetExhausted& e) {
    err << "error: budget: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kVerification;
  }
}

}  // namespace cubics::cli
