#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "kanext/spec_file.hpp"

namespace kanext {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceLocation error_location(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.where();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

TEST(SpecFile, EmptyFileHasNoCommands) {
  const SpecFile s = parse_spec("# nothing\n\n");
  EXPECT_TRUE(s.commands.empty());
  EXPECT_EQ(s.categories.size(), 0u);
}

TEST(SpecFile, DiamondScenarioParses) {
  const SpecFile s = parse_spec(slurp(KANEXT_SOURCE_DIR "/fixtures/diamond_main_theorem.spec"));
  EXPECT_EQ(s.categories.size(), 2u);
  EXPECT_EQ(s.functors.size(), 1u);
  EXPECT_EQ(s.cartesian.size(), 2u);
  ASSERT_EQ(s.commands.size(), 1u);
  EXPECT_EQ(s.commands[0].text, "check main-theorem J");
  EXPECT_EQ(s.kind_of("J"), "functor");
}

TEST(SpecFile, UndeclaredCategoryIsLocated) {
  const std::string text = slurp(KANEXT_SOURCE_DIR "/tests/data/bad_reference.spec");
  try {
    parse_spec(text);
    FAIL() << "expected a diagnostic";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.where().line, 7u);
    EXPECT_EQ(e.where().column, 8u);
    EXPECT_NE(std::string(e.what()).find("unknown category 'Missing'"), std::string::npos) << e.what();
  }
}

TEST(SpecFile, DuplicateNamesAreRejected) {
  const SourceLocation at = error_location("[categories]\nC = chain 2\nC = chain 3\n");
  EXPECT_EQ(at.line, 3u);
}

TEST(SpecFile, UnknownSectionIsRejected) {
  EXPECT_EQ(error_location("[categorys]\n").line, 1u);
}

TEST(SpecFile, ExplicitCategoryNeedsAllComposites) {
  // g . f is missing
  const SourceLocation at = error_location("[categories]\nE = explicit {a, b, c} {f: a -> b, g: b -> c}\n");
  EXPECT_EQ(at.line, 2u);
  const SpecFile ok = parse_spec(
      "[categories]\nE = explicit {a, b, c} {f: a -> b, g: b -> c, h: a -> c}\n    {g . f = h}\n");
  EXPECT_EQ(ok.categories.at("E")->morphism_count(), 6u);
}

TEST(SpecFile, CommandsCheckTheirArguments) {
  EXPECT_EQ(error_location("[categories]\nC = chain 2\n[commands]\ncheck coyoneda C\n").line, 4u);
  EXPECT_EQ(error_location("[commands]\nfrobnicate\n").line, 2u);
}

TEST(SpecFile, SetFunctorMapsAreFilledWhereForced) {
  const SpecFile s = parse_spec(
      "[sets]\nOne = {p}\n[categories]\nC = chain 2\n[functors]\nF : C = sets {0: 0, 1: One}\n");
  const SetFunctor& f = s.set_functors.at("F");
  EXPECT_EQ(f.maps.size(), 3u);
  EXPECT_TRUE(validate_set_functor(f).ok());
}

TEST(SpecFile, BuiltinTheoriesResolveInCommands) {
  const SpecFile s = parse_spec("[commands]\ntheory free-model pointed-sets S=2\n");
  EXPECT_TRUE(s.theories.contains("pointed-sets"));
  EXPECT_EQ(s.commands.size(), 1u);
}

TEST(SpecFile, AllShippedFixturesParse) {
  for (const char* name : {"coyoneda", "diamond_main_theorem", "lawvere", "lax_module", "structures"}) {
    EXPECT_NO_THROW(parse_spec(slurp(std::string(KANEXT_SOURCE_DIR "/fixtures/") + name + ".spec"))) << name;
  }
}

}  // namespace
}  // namespace kanext
