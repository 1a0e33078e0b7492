#include <gtest/gtest.h>

#include "kanext/lawvere.hpp"
#include "kanext/spec_file.hpp"
#include "oracles.hpp"

namespace kanext {
namespace {

TheoryPresentation builtin(const std::string& name) {
  for (const TheoryPresentation& p : builtin_theories()) {
    if (p.name == name) return p;
  }
  throw Error("no built-in theory " + name);
}

std::vector<std::size_t> arities(const TheoryPresentation& p) {
  std::vector<std::size_t> out;
  for (const Operation& o : p.operations) out.push_back(o.arity);
  return out;
}

struct Fixture {
  TruncatedTheory sets;
  TruncatedTheory target;
  CatFunctor theta;
};

Fixture fixture(const std::string& name) {
  TruncatedTheory target = build_truncated_theory(builtin(name));
  TruncatedTheory sets = build_truncated_theory(TheoryPresentation{"sets", {}, {}, target.truncation()});
  CatFunctor theta = theory_morphism(sets, target, {});
  return Fixture{std::move(sets), std::move(target), std::move(theta)};
}

TEST(Lawvere, ParseTermRoundTrips) {
  const std::vector<Operation> ops{{"e", 0}, {"m", 2}};
  const Term t = parse_term("m(x1,m(e,x2))", ops);
  EXPECT_EQ(to_string(t), "m(x1,m(e,x2))");
  EXPECT_EQ(t.variable_bound(), 2u);
  EXPECT_THROW(parse_term("m(x1)", ops), Error);
}

TEST(Lawvere, FreeAlgebraSizes) {
  const TheoryPresentation pointed = builtin("pointed-sets");
  const TheoryPresentation msets = builtin("m-sets");
  for (std::size_t m = 0; m <= 3; ++m) {
    EXPECT_EQ(free_algebra(pointed, m).size(), m + 1);
    EXPECT_EQ(free_algebra(msets, m).size(), 2 * m);
  }
}

TEST(Lawvere, TruncatedTheoryIsCartesian) {
  for (const char* name : {"sets", "pointed-sets", "m-sets"}) {
    const TruncatedTheory t = build_truncated_theory(builtin(name));
    EXPECT_TRUE(validate_category(*t.category).ok()) << name;
    EXPECT_TRUE(validate_cartesian(t.cartesian).ok()) << name;
    EXPECT_EQ(t.category->object_count(), t.truncation() + 1);
  }
}

TEST(Lawvere, ModelCountsOnSmallCarriers) {
  // pointed sets: one per choice of point; involutions on 0..3 points: 1, 1, 2, 4
  EXPECT_EQ(enumerate_models(fixture("pointed-sets").target, 3).size(), 6u);
  EXPECT_EQ(enumerate_models(fixture("m-sets").target, 3).size(), 8u);
  for (const TheoryModel& m : enumerate_models(fixture("m-sets").target, 3)) {
    EXPECT_TRUE(validate_model(fixture("m-sets").target, m.functor).ok());
  }
}

TEST(Lawvere, FreeModelsMatchBruteForce) {
  for (const char* name : {"pointed-sets", "m-sets"}) {
    const Fixture fx = fixture(name);
    for (const TheoryModel& s : enumerate_models(fx.sets, 3)) {
      const std::size_t n = s.carrier.size();
      const FreeModelResult fm = free_model(fx.theta, fx.sets, fx.target, s);
      ASSERT_TRUE(fm.model.has_value()) << name << " " << n << ": " << fm.failure;
      const auto expected = std::string(name) == "pointed-sets" ? oracle::free_pointed_set(n)
                                                               : oracle::free_involution_set(n);
      const std::size_t size = std::string(name) == "pointed-sets" ? n + 1 : 2 * n;
      EXPECT_EQ(fm.model->carrier.size(), size);
      EXPECT_TRUE(oracle::isomorphic_algebras(fm.model->carrier.size(), fm.model->operations, size,
                                              expected, arities(fx.target.presentation)))
          << name << " " << n;
    }
  }
}

TEST(Lawvere, AdjunctionIsNaturalOnSmallCarriers) {
  for (const char* name : {"pointed-sets", "m-sets"}) {
    const Fixture fx = fixture(name);
    const AdjunctionReport adj = adjunction_check(fx.theta, fx.sets, fx.target, enumerate_models(fx.sets, 3),
                                                  enumerate_models(fx.target, 3));
    EXPECT_TRUE(adj.ok()) << name << ": " << adj.detail;
    EXPECT_GT(adj.naturality_squares, 0u);
  }
}

TEST(Lawvere, TheoryMorphismChecksEquations) {
  const TruncatedTheory pointed = build_truncated_theory(builtin("pointed-sets"));
  const TruncatedTheory msets = build_truncated_theory(builtin("m-sets"));
  TheoryPresentation idem{"idem", {{"s", 1}}, {}, 3};
  idem.equations.push_back({parse_term("s(s(x1))", idem.operations), parse_term("s(x1)", idem.operations)});
  const TruncatedTheory t_idem = build_truncated_theory(idem);
  // s ↦ e satisfies s(s(x)) = s(x)
  EXPECT_NO_THROW(theory_morphism(t_idem, pointed, {Term::apply("e")}));
  // s ↦ s of the involution theory turns s(s(x)) = s(x) into x = s(x)
  EXPECT_THROW(theory_morphism(t_idem, msets, {Term::apply("s", {Term::variable(0)})}), Error);
}

TEST(Lawvere, ModelIsomorphismFindsRelabelings) {
  const TruncatedTheory pointed = build_truncated_theory(builtin("pointed-sets"));
  const FinSet carrier = FinSet::range(2);
  const TheoryModel a = model_from_operations(pointed, carrier, {{0}});
  const TheoryModel b = model_from_operations(pointed, carrier, {{1}});
  const auto iso = model_isomorphism(pointed, a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ((*iso)[0], 1u);
}

}  // namespace
}  // namespace kanext
