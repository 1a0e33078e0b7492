#include <gtest/gtest.h>

#include "kanext/finset.hpp"

namespace kanext {
namespace {

TEST(FinSet, LabelsAndLookup) {
  const FinSet s({"a", "b", "c"});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.label(1), "b");
  EXPECT_EQ(s.index_of("c"), 2u);
  EXPECT_FALSE(s.find("z").has_value());
  EXPECT_THROW(FinSet({"a", "a"}), Error);
}

TEST(FinSet, RangeIsLazyButEqualToExplicit) {
  EXPECT_EQ(FinSet::range(3), FinSet({"0", "1", "2"}));
  EXPECT_TRUE(FinSet().empty());
}

TEST(FinSet, ProductIsXMajor) {
  const Product p = product(FinSet({"a", "b"}), FinSet({"0", "1", "2"}));
  EXPECT_EQ(p.set.size(), 6u);
  EXPECT_EQ(p.set.label(p.pair(1, 2)), "(b,2)");
  EXPECT_EQ(p.proj1(p.pair(1, 2)), 1u);
  EXPECT_EQ(p.proj2(p.pair(1, 2)), 2u);
}

TEST(FinSet, CoproductTagsParts) {
  const Coproduct c = coproduct({FinSet({"x"}), FinSet({"x", "y"})});
  EXPECT_EQ(c.set.size(), 3u);
  EXPECT_EQ(c.set.label(c.inject(1, 1)), "1#y");
  EXPECT_EQ(c.set.index_of("0#x"), 0u);
}

TEST(FinSet, CoequalizerMatchesHandComputation) {
  // f, g : {0,1} → {0,1,2,3} identify 0~1 and 2~3
  const FinSet x = FinSet::range(2), y = FinSet::range(4);
  const Quotient q = coequalizer(FinFunction(x, y, {0, 2}), FinFunction(x, y, {1, 3}));
  EXPECT_EQ(q.set.size(), 2u);
  EXPECT_EQ(q.map(0), q.map(1));
  EXPECT_EQ(q.map(2), q.map(3));
  EXPECT_NE(q.map(0), q.map(2));
}

TEST(FinSet, InverseCitesCollisionAndMiss) {
  const FinSet x = FinSet::range(2), y = FinSet::range(2);
  const FinFunction f(x, y, {1, 1});
  const InverseResult r = find_inverse(f);
  EXPECT_FALSE(r.bijective());
  ASSERT_TRUE(r.collision.has_value());
  EXPECT_FALSE(r.describe(f).empty());
  EXPECT_TRUE(find_inverse(FinFunction(x, y, {1, 0})).bijective());
}

TEST(FinSet, AllFunctionsCountsExponential) {
  EXPECT_EQ(all_functions(FinSet::range(3), FinSet::range(2)).size(), 8u);
  EXPECT_EQ(all_functions(FinSet(), FinSet()).size(), 1u);
  EXPECT_EQ(all_functions(FinSet::range(1), FinSet()).size(), 0u);
  EXPECT_EQ(count_functions(2, 3), 9u);
}

TEST(FinSet, ComposeAndDomainChecks) {
  const FinSet a = FinSet::range(2), b = FinSet::range(3);
  const FinFunction f(a, b, {2, 0});
  const FinFunction g(b, a, {1, 1, 0});
  EXPECT_EQ(compose(g, f).table(), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(compose(f, f), Error);
  EXPECT_THROW(FinFunction(a, b, {3, 0}), Error);
}

}  // namespace
}  // namespace kanext
