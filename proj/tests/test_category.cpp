#include <gtest/gtest.h>

#include "kanext/category.hpp"
#include "kanext/fixtures.hpp"

namespace kanext {
namespace {

TEST(Category, ShippedFixturesAreValidAndSmall) {
  for (const NamedCategory& nc : shipped_categories()) {
    SCOPED_TRACE(nc.name);
    EXPECT_TRUE(validate_category(*nc.cat).ok()) << validate_category(*nc.cat).summary();
    EXPECT_LE(nc.cat->object_count(), 6u);
    for (std::size_t a = 0; a < nc.cat->object_count(); ++a) {
      for (std::size_t b = 0; b < nc.cat->object_count(); ++b) EXPECT_LE(nc.cat->hom(a, b).size(), 4u);
    }
  }
}

TEST(Category, PosetClosureAndLabels) {
  const CatRef c = poset_category("P", {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(c->is_thin());
  EXPECT_NE(c->unique_morphism(0, 2), npos);
  EXPECT_EQ(c->unique_morphism(2, 0), npos);
  EXPECT_EQ(c->label(c->unique_morphism(0, 2)), "a->c:le");
  EXPECT_EQ(c->morphism_index("a->c:le"), c->unique_morphism(0, 2));
  EXPECT_THROW(c->object_index("zz"), Error);
}

TEST(Category, MonoidCompositionFollowsTable) {
  // {1, s} with s·s = 1
  const CatRef z2 = monoid_category("Z2", {"1", "s"}, {{0, 1}, {1, 0}});
  ASSERT_TRUE(validate_category(*z2).ok());
  const std::size_t s = 1;
  EXPECT_EQ(z2->compose(s, s), z2->identity(0));
}

TEST(Category, BrokenAssociativityIsReported) {
  // u·u = v, u·v = u, v·u = v, v·v = v: (u·u)·u = v but u·(u·u) = u
  CategoryBuilder c("nonassoc");
  const std::size_t p = c.add_object("p");
  const std::size_t u = c.add_morphism("u", p, p);
  const std::size_t v = c.add_morphism("v", p, p);
  c.set_composite(u, u, v);
  c.set_composite(u, v, u);
  c.set_composite(v, u, v);
  c.set_composite(v, v, v);
  EXPECT_FALSE(validate_category(*c.build()).ok());
}

TEST(Category, OppositeReversesArrows) {
  const CatRef c = chain_category(3);
  const CatRef op = opposite(c);
  ASSERT_TRUE(validate_category(*op).ok());
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    EXPECT_EQ(op->src(m), c->dst(m));
    EXPECT_EQ(op->dst(m), c->src(m));
  }
  EXPECT_TRUE(same_category(opposite(op), c));
}

TEST(Category, TensorIndexing) {
  const CatRef a = chain_category(2), b = parallel_category(2);
  const CatRef t = tensor_category(a, b);
  ASSERT_TRUE(validate_category(*t).ok());
  EXPECT_EQ(t->object_count(), 4u);
  EXPECT_EQ(t->morphism_count(), a->morphism_count() * b->morphism_count());
  const std::size_t f = a->unique_morphism(0, 1);
  const std::size_t g = b->hom(0, 1)[1];
  const std::size_t fg = tensor_morphism(*b, f, g);
  EXPECT_EQ(t->src(fg), tensor_object(*b, 0, 0));
  EXPECT_EQ(t->dst(fg), tensor_object(*b, 1, 1));
}

TEST(Category, PairCategoryKeepsSelectedPairs) {
  const CatRef c = chain_category(3);
  const PairCategory pc = pair_category(c, c, [](std::size_t x, std::size_t y) { return x <= y; });
  EXPECT_EQ(pc.cat->object_count(), 6u);
  EXPECT_EQ(pc.object(2, 0), npos);
  EXPECT_NE(pc.object(0, 2), npos);
  EXPECT_TRUE(validate_category(*pc.cat).ok());
}

TEST(Category, ThinFunctorRequiresMonotoneMap) {
  const CatRef d = diamond_category(), c3 = chain_category(3);
  const CatFunctor j = thin_functor(d, c3, {0, 1, 1, 2});
  EXPECT_TRUE(validate_functor(j).ok());
  EXPECT_THROW(thin_functor(d, c3, {2, 1, 1, 0}), Error);
}

TEST(Category, ComposeWithIdentityIsNeutral) {
  const CatRef d = diamond_category(), c3 = chain_category(3);
  const CatFunctor j = thin_functor(d, c3, {0, 0, 2, 2});
  EXPECT_TRUE(compose(identity_functor(c3), j) == j);
  EXPECT_TRUE(compose(j, identity_functor(d)) == j);
}

}  // namespace
}  // namespace kanext
