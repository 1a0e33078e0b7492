#include <gtest/gtest.h>

#include "kanext/fixtures.hpp"
#include "oracles.hpp"

namespace kanext {
namespace {

TEST(Colimit, PartitionMatchesOracleOnShippedFixtures) {
  for (const NamedCategory& nc : shipped_categories()) {
    SCOPED_TRACE(nc.name);
    const std::vector<Weight> ws = weight_fixtures(nc.cat, 2);
    for (const SetFunctor& f : functor_fixtures(nc.cat, 2)) {
      for (const Weight& w : ws) {
        const ColimitObject c = weighted_colimit(w, f);
        EXPECT_TRUE(oracle::same_partition(c, w, f));
      }
    }
  }
}

TEST(Colimit, CoYonedaSizeMatchesOracle) {
  for (const NamedCategory& nc : shipped_categories()) {
    for (const SetFunctor& f : functor_fixtures(nc.cat, 3)) {
      for (std::size_t a = 0; a < nc.cat->object_count(); ++a) {
        const IsoWitness iso = coyoneda_check(f, a);
        ASSERT_TRUE(iso.ok) << nc.name << " " << iso.detail;
        EXPECT_EQ(oracle::coend(oracle::representable(nc.cat, a), f).size, f.sets[a].size());
      }
    }
  }
}

TEST(Colimit, ParallelArrowsIdentifyImages) {
  // F : (a ⇉ b) with F a = {p}, F f0 (p) = u, F f1 (p) = w
  const CatRef c = parallel_category(2);
  const FinSet fa({"p"}), fb({"u", "v", "w"});
  SetFunctor f{c, {fa, fb}, {}};
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    if (c->is_identity(m)) {
      f.maps.push_back(FinFunction::identity(f.sets[c->src(m)]));
    } else {
      f.maps.emplace_back(fa, fb, std::vector<std::size_t>{c->morphism(m).name == "f0" ? 0u : 2u});
    }
  }
  ASSERT_TRUE(validate_set_functor(f).ok());
  // colim(C(−, a), F) = F a
  EXPECT_EQ(weighted_colimit(hom_weight(c, 0), f).carrier.size(), 1u);
  // the terminal weight computes π0 of the category of elements: {u~p~w, v}
  EXPECT_EQ(weighted_colimit(constant_weight(c, FinSet::singleton()), f).carrier.size(), 2u);
}

TEST(Colimit, FactorizeRejectsNonCocone) {
  const CatRef c = chain_category(2);
  const SetFunctor f = constant_functor(c, FinSet::range(2));
  const ColimitObject col = weighted_colimit(constant_weight(c, FinSet::singleton()), f);
  ASSERT_EQ(col.carrier.size(), 2u);
  const FinSet target = FinSet::range(2);
  EXPECT_NO_THROW(colimit_factorize(col, target, [](std::size_t, std::size_t, std::size_t x) { return x; }));
  // sending the same element to different places over 0 and 1 violates the cocone
  EXPECT_THROW(colimit_factorize(col, target, [](std::size_t a, std::size_t, std::size_t x) { return a == 0 ? x : 1 - x; }),
               Error);
}

TEST(Colimit, FubiniMatchesJointOracle) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const FubiniInstance inst = random_fubini_instance(rng);
    const FubiniResult r = fubini_check(inst.w1, inst.w2, inst.f);
    ASSERT_TRUE(r.iso.ok) << inst.description << ": " << r.iso.detail;
    EXPECT_EQ(r.joint.carrier.size(), oracle::joint_coend_size(inst.w1, inst.w2, inst.f)) << inst.description;
  }
}

TEST(Colimit, MatesOnGaloisConnections) {
  const CatRef c3 = chain_category(3), c2 = chain_category(2);
  const std::vector<Adjunction> adjs = galois_connections(c3, c2);
  ASSERT_FALSE(adjs.empty());
  for (const Adjunction& adj : adjs) {
    EXPECT_TRUE(validate_adjunction(adj).ok());
    for (const Weight& w : weight_fixtures(c2, 2)) {
      for (const SetFunctor& g : functor_fixtures(c3, 2)) {
        const MatesResult m = mates_check(w, g, adj);
        ASSERT_TRUE(m.iso.ok) << m.iso.detail;
        EXPECT_EQ(m.reindexed_weight.carrier.size(), oracle::coend(precompose(w, adj.left), g).size);
      }
    }
  }
}

TEST(Colimit, VerifyAdjunctionRejectsNonAdjoints) {
  const CatRef c3 = chain_category(3), c2 = chain_category(2);
  // S constant at 1 and T constant at 0: S 0 ≤ 0 fails although 0 ≤ T 0
  const CatFunctor s = thin_functor(c3, c2, {1, 1, 1});
  const CatFunctor t = thin_functor(c2, c3, {0, 0});
  EXPECT_FALSE(verify_adjunction(s, t).has_value());
}

TEST(Colimit, EnumerateTransformationsAgreesWithYoneda) {
  const CatRef c = chain_category(2);
  const SetFunctor f = hom_functor(c, 0);
  const SetFunctor g = constant_functor(c, FinSet::range(3));
  // Nat(C(0,−), G) ≅ G(0) by Yoneda
  EXPECT_EQ(enumerate_transformations(f, g).size(), 3u);
}

}  // namespace
}  // namespace kanext
