#include <gtest/gtest.h>

#include "kanext/fixtures.hpp"
#include "kanext/spec_file.hpp"

namespace kanext {
namespace {

/// Some cone (p, π1, π2) over a, b through which every cone factors uniquely.
bool has_product(const FinCategory& c, std::size_t a, std::size_t b) {
  const std::size_t n = c.object_count();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t p1 : c.hom(p, a)) {
      for (std::size_t p2 : c.hom(p, b)) {
        bool universal = true;
        for (std::size_t x = 0; x < n && universal; ++x) {
          for (std::size_t f : c.hom(x, a)) {
            for (std::size_t g : c.hom(x, b)) {
              std::size_t count = 0;
              for (std::size_t h : c.hom(x, p)) count += c.compose(p1, h) == f && c.compose(p2, h) == g;
              universal = universal && count == 1;
            }
          }
        }
        if (universal) return true;
      }
    }
  }
  return false;
}

bool has_terminal(const FinCategory& c) {
  for (std::size_t t = 0; t < c.object_count(); ++t) {
    bool ok = true;
    for (std::size_t x = 0; x < c.object_count(); ++x) ok = ok && c.hom(x, t).size() == 1;
    if (ok) return true;
  }
  return false;
}

TEST(Monoidal, DeriveCartesianAgreesWithBruteForce) {
  for (const NamedCategory& nc : shipped_categories()) {
    const FinCategory& c = *nc.cat;
    bool expected = has_terminal(c);
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      for (std::size_t b = 0; b < c.object_count(); ++b) expected = expected && has_product(c, a, b);
    }
    const CartesianSearch found = derive_cartesian(nc.cat);
    EXPECT_EQ(found.structure.has_value(), expected) << nc.name << ": " << found.failure;
    if (found.structure) {
      EXPECT_TRUE(validate_cartesian(*found.structure).ok()) << nc.name;
      EXPECT_TRUE(validate_adjunction(diagonal_adjunction(*found.structure)).ok()) << nc.name;
      EXPECT_TRUE(validate_adjunction(terminal_adjunction(*found.structure)).ok()) << nc.name;
    }
  }
}

TEST(Monoidal, PartialDerivationLeavesMissingProductsUndefined) {
  const CatRef v = poset_category("V", {"l", "r", "t"}, {{"l", "t"}, {"r", "t"}});
  EXPECT_FALSE(derive_cartesian(v).structure.has_value());
  const CartesianSearch partial = derive_cartesian(v, true);
  ASSERT_TRUE(partial.structure.has_value());
  EXPECT_FALSE(partial.structure->monoidal.defined(0, 1));
  EXPECT_TRUE(partial.structure->monoidal.defined(0, 2));
  EXPECT_TRUE(validate_cartesian(*partial.structure).ok());
}

TEST(Monoidal, ThinMonoidalFromTable) {
  // join with unit 0 on the 3-chain
  const CatRef c = chain_category(3);
  std::vector<std::size_t> join(9);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) join[a * 3 + b] = std::max(a, b);
  }
  EXPECT_TRUE(validate_monoidal(thin_monoidal(c, join, 0)).ok());
  // unit 1 fails the unitors: 1 ∨ 0 = 1 has no arrow to 0
  EXPECT_THROW(thin_monoidal(c, join, 1), Error);
}

TEST(Monoidal, MeetPreservingMapsAreStrong) {
  for (const NamedCategory& na : mates_posets()) {
    for (const NamedCategory& nb : mates_posets()) {
      const CartesianStructure ca = *derive_cartesian(na.cat).structure;
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      for (const CatFunctor& j : meet_top_preserving_maps(ca, cb)) {
        const CanonicalConstraints cc = constraints_from_cartesian(j, ca, cb);
        ASSERT_TRUE(cc.strong.has_value()) << cc.detail;
        EXPECT_TRUE(validate_monoidal_functor(*cc.strong).ok());
      }
    }
  }
}

TEST(Monoidal, NonMeetPreservingMapIsOnlyComonoidal) {
  const NonMeetPreservingFixture neg = non_meet_preserving_fixture();
  const CanonicalConstraints cc = constraints_from_cartesian(neg.j, neg.a, neg.b);
  EXPECT_FALSE(cc.strong.has_value());
  EXPECT_FALSE(cc.detail.empty());
  EXPECT_TRUE(validate_monoidal_functor(cc.comonoidal).ok());
}

}  // namespace
}  // namespace kanext
