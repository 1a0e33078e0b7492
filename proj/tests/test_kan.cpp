#include <gtest/gtest.h>

#include "kanext/fixtures.hpp"
#include "kanext/kan.hpp"
#include "oracles.hpp"

namespace kanext {
namespace {

/// B(J−, b) from the composition table of B alone.
Weight comma_weight(const CatFunctor& j, std::size_t b) {
  const FinCategory& cb = *j.cod;
  Weight w{j.dom, {}, {}};
  for (std::size_t a = 0; a < j.dom->object_count(); ++a) w.sets.push_back(cb.hom_set(j.obj[a], b));
  for (std::size_t m = 0; m < j.dom->morphism_count(); ++m) {
    const std::size_t a = j.dom->src(m), a2 = j.dom->dst(m);
    std::vector<std::size_t> table;
    for (std::size_t g : cb.hom(j.obj[a2], b)) table.push_back(cb.hom_position(cb.compose(g, j.mor[m])));
    w.maps.emplace_back(w.sets[a2], w.sets[a], table);
  }
  return w;
}

TEST(Kan, PointwiseLanMatchesOracle) {
  for (const NamedCategory& na : mates_posets()) {
    for (const NamedCategory& nb : mates_posets()) {
      const CartesianStructure ca = *derive_cartesian(na.cat).structure;
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      for (const CatFunctor& j : meet_top_preserving_maps(ca, cb)) {
        for (const SetFunctor& f : functor_fixtures(na.cat, 2)) {
          const LanResult lan = pointwise_lan(j, f);
          ASSERT_TRUE(validate_set_functor(lan.lan).ok());
          for (std::size_t b = 0; b < nb.cat->object_count(); ++b) {
            EXPECT_EQ(lan.lan.sets[b].size(), oracle::coend(comma_weight(j, b), f).size);
          }
        }
      }
    }
  }
}

TEST(Kan, LanAlongIdentityIsF) {
  const CatRef c = grid_category(2, 3);
  for (const SetFunctor& f : functor_fixtures(c, 3)) {
    const LanResult lan = pointwise_lan(identity_functor(c), f);
    for (std::size_t a = 0; a < c->object_count(); ++a) {
      EXPECT_TRUE(find_inverse(lan.unit[a]).bijective());
    }
  }
}

TEST(Kan, UniversalPropertyCountsAgree) {
  const CatRef d = diamond_category(), c3 = chain_category(3);
  const CatFunctor j = thin_functor(d, c3, {0, 1, 1, 2});
  for (const SetFunctor& f : functor_fixtures(d, 2)) {
    const LanResult lan = pointwise_lan(j, f);
    for (const SetFunctor& g : functor_fixtures(c3, 2)) {
      const UniversalReport u = lan_universal_check(lan, g);
      EXPECT_TRUE(u.ok) << u.detail;
      EXPECT_EQ(u.transformations_from_f, u.transformations_from_lan);
    }
  }
}

TEST(Kan, MainTheoremOnDiamondHasSixLinks) {
  const CatRef d = diamond_category(), c3 = chain_category(3);
  const CartesianStructure cd = *derive_cartesian(d).structure;
  const CartesianStructure cc = *derive_cartesian(c3).structure;
  const CatFunctor j = thin_functor(d, c3, {0, 0, 2, 2});
  for (const SetFunctor& f : filter_indicators(cd)) {
    const TheoremReport r = main_theorem_check(j, cd, cc, f);
    EXPECT_TRUE(r.ok()) << r.first_failure();
    EXPECT_EQ(r.links.size(), 6u);
    for (const LinkResult& l : r.links) EXPECT_TRUE(l.computed && l.invertible) << l.name;
    EXPECT_TRUE(r.canonical_strong);
  }
}

TEST(Kan, NonMeetPreservingMapFailsThePrecondition) {
  const NonMeetPreservingFixture neg = non_meet_preserving_fixture();
  const TheoremReport r = main_theorem_check(neg.j, neg.a, neg.b, neg.f);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure().rfind("precondition", 0), 0u) << r.first_failure();
  // without the precondition every link is invertible: over finite sets the
  // comparison does not depend on J preserving meets
  MainTheoremOptions relaxed;
  relaxed.require_strong_j = false;
  const TheoremReport open = main_theorem_check(neg.j, neg.a, neg.b, neg.f, std::nullopt, relaxed);
  for (const LinkResult& l : open.links) EXPECT_TRUE(l.invertible) << l.name << ": " << l.detail;
}

TEST(Kan, FilterIndicatorsAreExactlyTheStrongMonoidalIndicators) {
  for (const NamedCategory& nc : lattice_fixtures()) {
    const CartesianStructure c = *derive_cartesian(nc.cat).structure;
    const std::size_t n = nc.cat->object_count();
    std::size_t strong = 0;
    // every 0/1-valued functor, strong iff the canonical comparisons are bijections
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      SetFunctor f{nc.cat, {}, {}};
      for (std::size_t a = 0; a < n; ++a) f.sets.push_back((mask >> a) & 1 ? FinSet::singleton() : FinSet());
      bool functorial = true;
      for (std::size_t m = 0; m < nc.cat->morphism_count() && functorial; ++m) {
        const FinSet& s = f.sets[nc.cat->src(m)];
        const FinSet& t = f.sets[nc.cat->dst(m)];
        functorial = s.empty() || !t.empty();
        if (functorial) f.maps.emplace_back(s, t, std::vector<std::size_t>(s.size(), 0));
      }
      if (!functorial) continue;
      if (set_constraints_from_cartesian(f, c).strong) ++strong;
    }
    EXPECT_EQ(strong, filter_indicators(c).size()) << nc.name;
  }
}

}  // namespace
}  // namespace kanext
