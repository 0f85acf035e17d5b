#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubics/cli.hpp"
#include "cubics/construct.hpp"
#include "cubics/io.hpp"
#include "cubics/search.hpp"

using namespace cubics;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

}  // namespace

TEST(Io, SystemRoundTrip) {
  for (const auto& e : search::witness_table()) {
    auto t = gf::Tower::make(e.q);
    std::vector<forms::CubicForm> basis;
    for (auto s : e.forms) basis.push_back(forms::parse_cubic(s, t->base()));
    const linsys::LinearSystem S(t->base(), basis, "row");
    const auto back = io::system_from_json(json::parse(io::system_to_json(S).dump()));
    EXPECT_EQ(back.label(), "row");
    EXPECT_EQ(back.basis(), S.basis());
  }
}

TEST(Io, ScanRoundTripWithVerdicts) {
  const auto w = construct::explicit_construction(3, 1);
  const auto j = json::parse(io::scan_to_json(w.system, w.scan).dump());
  const auto r = io::scan_from_json(j, *w.tower);
  ASSERT_EQ(r.reducible.size(), 1u);
  const auto& a = r.reducible[0];
  const auto& b = w.scan.reducible[0];
  EXPECT_EQ(a.index, b.index);
  EXPECT_EQ(a.form, b.form);
  EXPECT_EQ(a.verdict.kind, b.verdict.kind);
  EXPECT_EQ(a.verdict.orbit, b.verdict.orbit);
  ASSERT_EQ(a.verdict.factors.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.verdict.factors[i].line, b.verdict.factors[i].line);
    EXPECT_EQ(a.verdict.factors[i].degree, 3u);
  }
  EXPECT_EQ(r.lines_total, w.scan.lines_total);
  auto bad = j;
  bad["reducible_count"] = 2;
  EXPECT_THROW(io::scan_from_json(bad, *w.tower), std::invalid_argument);
}

TEST(Io, VerdictWithCofactorRoundTrip) {
  auto t = gf::Tower::make(5);
  const auto v = classify::classify(forms::parse_cubic("x^3 + x*y*z", t->base()), *t);
  const auto back = io::verdict_from_json(io::verdict_to_json(v), *t);
  EXPECT_EQ(back.kind, classify::VerdictKind::FqReducible);
  ASSERT_TRUE(back.cofactor);
  EXPECT_EQ(*back.cofactor, *v.cofactor);
  EXPECT_EQ(back.factors[0].line, v.factors[0].line);
}

TEST(Io, ModulusMismatchRejected) {
  auto t = gf::Tower::make(4);
  std::vector<forms::CubicForm> basis;
  for (auto s : {"x^3", "y^3", "z^3", "x*y*z"}) basis.push_back(forms::parse_cubic(s, t->base()));
  auto j = io::system_to_json(linsys::LinearSystem(t->base(), basis));
  j["field"]["modulus"] = {1, 0, 1};
  EXPECT_THROW(io::system_from_json(j), std::invalid_argument);
}

TEST(Cli, ClassifyExample) {
  const auto r = run({"classify", "--q", "2", "--form", "x^3+y*z^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"]["kind"], "GeomIrreducible");
  EXPECT_FALSE(j.contains("seconds"));
}

TEST(Cli, VerifyTableSingleRow) {
  const auto r = run({"verify-table", "--q", "3", "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["all_passed"].get<bool>());
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["scan"]["member_count"], 40);
}

TEST(Cli, ExplicitQ7) {
  const auto r = run({"explicit", "--q", "7", "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["scan"]["reducible_count"], 1);
  EXPECT_EQ(j["scan"]["reducible"][0]["verdict"]["kind"], "FqIrreducibleGeomReducible");
}

TEST(Cli, OutFileIsNewlineTerminated) {
  const auto path = temp_file("cubics_lemma.json");
  const auto r = run({"lemma31", "--q", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(json::parse(text)["counterexamples"], 0);
}

TEST(Cli, SearchIsByteReproducible) {
  const auto a = run({"search", "--q", "2", "--seed", "5", "--threads", "1"});
  const auto b = run({"search", "--q", "2", "--seed", "5", "--threads", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto timed = run({"search", "--q", "2", "--seed", "5", "--timing"});
  EXPECT_TRUE(json::parse(timed.out).contains("seconds"));
}

TEST(Cli, WitnessLogAppends) {
  const auto path = temp_file("cubics_witness.ndjson");
  std::filesystem::remove(path);
  for (int i = 0; i < 2; ++i)
    ASSERT_EQ(run({"search", "--q", "2", "--seed", "9", "--witness-log", path.string()}).code, 0);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(json::parse(line)["q"], 2);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"census", "--q", "6"}).code, cli::kUsage);
  EXPECT_EQ(run({"census", "--q", "7"}).code, cli::kUsage);
  EXPECT_EQ(run({"explicit"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"classify", "--q", "2", "--form", "x^2"}).code, cli::kUsage);
  const auto budget = run({"search", "--q", "3", "--seed", "1", "--max-iters", "1"});
  EXPECT_EQ(budget.code, cli::kBudget);
  EXPECT_EQ(budget.err.rfind("error: budget: ", 0), 0u);
  EXPECT_FALSE(json::parse(budget.out)["found"].get<bool>());
  EXPECT_EQ(run({"orbit", "--q", "2", "--max-iters", "0"}).code, cli::kBudget);
}

TEST(Cli, CsvAndTextFormats) {
  const auto csv = run({"extend", "--row", "8", "--q", "2", "--k", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream lines(csv.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 7);  // header and six members
  const auto text = run({"census", "--q", "2", "--format", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("1023"), std::string::npos);
}
