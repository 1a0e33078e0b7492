#include <gtest/gtest.h>

#include "kanext/fixtures.hpp"
#include "kanext/kan.hpp"
#include "oracles.hpp"

namespace kanext {
namespace {

// Seeded random instances; each property names its seed so failures replay.

TEST(Properties, RandomCategoriesAreValid) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const CatRef c = random_category(rng, 4, 3);
    EXPECT_TRUE(validate_category(*c).ok()) << "seed 11 draw " << i;
    EXPECT_TRUE(validate_category(*opposite(c)).ok());
  }
}

TEST(Properties, WeightedColimitMatchesOracle) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    const CatRef c = random_category(rng, 3, 3);
    const auto f = random_functor(c, rng, 3);
    const auto w = random_weight(c, rng, 3);
    if (!f || !w) continue;
    const ColimitObject col = weighted_colimit(*w, *f);
    EXPECT_EQ(col.carrier.size(), oracle::coend(*w, *f).size) << "seed 12 draw " << i;
    EXPECT_TRUE(oracle::same_partition(col, *w, *f)) << "seed 12 draw " << i;
  }
}

TEST(Properties, CoYonedaOnRandomFunctors) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    const CatRef c = random_category(rng, 3, 3);
    const auto f = random_functor(c, rng, 3);
    if (!f) continue;
    for (std::size_t a = 0; a < c->object_count(); ++a) {
      EXPECT_TRUE(coyoneda_check(*f, a).ok) << "seed 13 draw " << i;
    }
  }
}

TEST(Properties, FubiniOnRandomInstances) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 30; ++i) {
    const FubiniInstance inst = random_fubini_instance(rng);
    const FubiniResult r = fubini_check(inst.w1, inst.w2, inst.f);
    EXPECT_TRUE(r.iso.ok) << inst.description;
    EXPECT_EQ(r.joint.carrier.size(), oracle::joint_coend_size(inst.w1, inst.w2, inst.f));
  }
}

TEST(Properties, LanIsAFunctorWithNaturalUnit) {
  std::mt19937_64 rng(15);
  for (const NamedCategory& na : mates_posets()) {
    for (const NamedCategory& nb : mates_posets()) {
      const CartesianStructure ca = *derive_cartesian(na.cat).structure;
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      for (const CatFunctor& j : meet_top_preserving_maps(ca, cb)) {
        const auto f = random_functor(na.cat, rng, 3);
        if (!f) continue;
        const LanResult lan = pointwise_lan(j, *f);
        EXPECT_TRUE(validate_set_functor(lan.lan).ok());
        SetFunctor lan_j{na.cat, {}, {}};
        for (std::size_t a = 0; a < na.cat->object_count(); ++a) lan_j.sets.push_back(lan.lan.sets[j.obj[a]]);
        for (std::size_t m = 0; m < na.cat->morphism_count(); ++m) lan_j.maps.push_back(lan.lan.maps[j.mor[m]]);
        EXPECT_TRUE(validate_transformation(*f, lan_j, SetTransformation{lan.unit}).ok());
      }
    }
  }
}

TEST(Properties, DeriveCartesianSurvivesDoubleOpposite) {
  // the opposite of the opposite derives the same structure
  for (const NamedCategory& nc : shipped_categories()) {
    const CartesianSearch a = derive_cartesian(nc.cat);
    const CartesianSearch b = derive_cartesian(opposite(opposite(nc.cat)));
    ASSERT_EQ(a.structure.has_value(), b.structure.has_value()) << nc.name;
    if (a.structure) {
      EXPECT_EQ(a.structure->monoidal.tensor_obj, b.structure->monoidal.tensor_obj);
    }
  }
}

}  // namespace
}  // namespace kanext
