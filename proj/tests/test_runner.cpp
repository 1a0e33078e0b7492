#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "kanext/runner.hpp"

namespace kanext {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string field(const Record& r, const std::string& key) {
  for (const auto& [k, v] : r.fields) {
    if (k == key) return v;
  }
  return "";
}

std::size_t count_prefix(const Record& r, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& [k, v] : r.fields) n += k.rfind(prefix, 0) == 0;
  return n;
}

Record run_one(const std::string& text) {
  const SpecFile s = parse_spec(text);
  return run_command(s, s.commands.at(0), RunOptions{});
}

TEST(Runner, CoyonedaRecordHasBijectionTable) {
  const SpecFile s = parse_spec(slurp(KANEXT_SOURCE_DIR "/fixtures/coyoneda.spec"));
  const Report rep = run_spec(s, "coyoneda.spec", RunOptions{});
  ASSERT_TRUE(rep.all_pass()) << emit(rep, Format::Human);
  const Record& last = rep.records.back();
  EXPECT_EQ(last.tag, "coyoneda");
  EXPECT_GT(count_prefix(last, "bijection"), 0u) << emit(rep, Format::Machine);
}

TEST(Runner, MainTheoremOnDiamondHasSixLinks) {
  const SpecFile s = parse_spec(slurp(KANEXT_SOURCE_DIR "/fixtures/diamond_main_theorem.spec"));
  const Report rep = run_spec(s, "diamond_main_theorem.spec", RunOptions{});
  ASSERT_EQ(rep.records.size(), 1u);
  EXPECT_EQ(rep.records[0].verdict, Verdict::Pass);
  EXPECT_EQ(count_prefix(rep.records[0], "link."), 6u);
}

TEST(Runner, FreePointedSetOnTwoGenerators) {
  const Record r = run_one("[commands]\ntheory free-model pointed-sets S=2\n");
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(field(r, "free.size"), "3");
  EXPECT_EQ(field(r, "adjunction"), "pass");
}

TEST(Runner, LaxModuleFailsCitingPhi) {
  const SpecFile s = parse_spec(slurp(KANEXT_SOURCE_DIR "/fixtures/lax_module.spec"));
  const Report rep = run_spec(s, "lax_module.spec", RunOptions{});
  ASSERT_EQ(rep.records.size(), 2u);
  EXPECT_EQ(rep.records[0].verdict, Verdict::Pass);
  EXPECT_EQ(rep.records[1].verdict, Verdict::Fail);
  EXPECT_NE(field(rep.records[1], "failure").find("phi"), std::string::npos);
}

TEST(Runner, RuntimeErrorsBecomeErrorRecords) {
  // an oversized bound is only rejected when the command runs
  const Record r = run_one("[commands]\ntheory models pointed-sets max=9999999\n");
  EXPECT_EQ(r.verdict, Verdict::Error);
  EXPECT_FALSE(field(r, "error").empty());
}

TEST(Runner, ParallelRunsKeepSpecOrderAndOutput) {
  const SpecFile s = parse_spec(slurp(KANEXT_SOURCE_DIR "/fixtures/structures.spec"));
  RunOptions serial, parallel;
  parallel.jobs = 4;
  const std::string a = emit(run_spec(s, "structures.spec", serial), Format::Machine);
  const std::string b = emit(run_spec(s, "structures.spec", parallel), Format::Machine);
  EXPECT_EQ(a, b);
}

TEST(Runner, EverySuiteTagIsKnown) {
  for (const std::string& tag : check_tags()) EXPECT_FALSE(tag.empty());
  EXPECT_EQ(check_tags().size(), 9u);
}

TEST(Runner, FubiniSuitePrintsSeed) {
  RunOptions o;
  o.seed = 99;
  const Record r = run_suite("fubini", o);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(field(r, "seed"), "99");
}

}  // namespace
}  // namespace kanext
