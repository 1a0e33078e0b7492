#include <gtest/gtest.h>

#include "kanext/convolution.hpp"
#include "kanext/fixtures.hpp"

namespace kanext {
namespace {

std::vector<CartesianStructure> cartesian_fixtures() {
  std::vector<CartesianStructure> out;
  for (const NamedCategory& nc : shipped_categories()) {
    CartesianSearch s = derive_cartesian(nc.cat);
    if (s.structure && nc.cat->object_count() <= 4) out.push_back(std::move(*s.structure));
  }
  return out;
}

TEST(Convolution, DayConvolutionIsThePointwiseProduct) {
  const std::vector<CartesianStructure> carts = cartesian_fixtures();
  ASSERT_FALSE(carts.empty());
  for (const CartesianStructure& cart : carts) {
    const PromonoidalStructure p = promonoidal_from_monoidal(cart);
    const std::vector<SetFunctor> fs = functor_fixtures(p.base, 2);
    for (const SetFunctor& m : fs) {
      for (const SetFunctor& n : fs) {
        const ConvolutionResult conv = day_convolve(m, n, p);
        ASSERT_TRUE(validate_set_functor(conv.result).ok());
        const SetTransformation t = convolution_to_pointwise(conv, cart, m, n);
        for (std::size_t a = 0; a < p.base->object_count(); ++a) {
          EXPECT_EQ(conv.result.sets[a].size(), m.sets[a].size() * n.sets[a].size());
          EXPECT_TRUE(find_inverse(t.components[a]).bijective()) << cart.base()->name() << " at " << a;
        }
      }
    }
  }
}

TEST(Convolution, PromonoidalFromCartesianIsValid) {
  for (const CartesianStructure& cart : cartesian_fixtures()) {
    const PromonoidalStructure p = promonoidal_from_monoidal(cart);
    const ValidationReport v = validate_promonoidal(p, functor_fixtures(p.base, 2));
    EXPECT_TRUE(v.ok()) << cart.base()->name() << ": " << v.summary();
  }
}

TEST(Convolution, IdentityModuleIsStrong) {
  for (const CartesianStructure& cart : cartesian_fixtures()) {
    const PromonoidalStructure p = promonoidal_from_monoidal(cart);
    const PromonoidalModule k = identity_module(p);
    EXPECT_TRUE(validate_promonoidal_module(k, p, p).ok());
    const std::vector<SetFunctor> fs = functor_fixtures(p.base, 2);
    const TheoremReport r = theorem_hit_check(k, fs.front(), fs.back(), p, p);
    EXPECT_TRUE(r.ok()) << r.first_failure();
  }
}

TEST(Convolution, Corollary1ModulesAreStrong) {
  for (const NamedCategory& na : mates_posets()) {
    for (const NamedCategory& nb : mates_posets()) {
      const CartesianStructure ca = *derive_cartesian(na.cat).structure;
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      const PromonoidalStructure pa = promonoidal_from_monoidal(ca);
      const PromonoidalStructure pb = promonoidal_from_monoidal(cb);
      const std::vector<CatFunctor> js = meet_top_preserving_maps(ca, cb);
      if (js.empty()) continue;
      const CanonicalConstraints cc = constraints_from_cartesian(js.front(), ca, cb);
      ASSERT_TRUE(cc.strong.has_value());
      const PromonoidalModule k = corollary1_module(*cc.strong, ca, cb, pa, pb);
      EXPECT_TRUE(k.strong) << na.name << " -> " << nb.name;
      EXPECT_TRUE(validate_promonoidal_module(k, pa, pb).ok());
    }
  }
}

TEST(Convolution, LaxModuleIsWellDefinedButNotInvertible) {
  const LaxModuleFixture fx = lax_module_fixture();
  EXPECT_TRUE(validate_promonoidal_module(fx.k, fx.pi, fx.pi).ok());
  EXPECT_FALSE(fx.k.strong);
  const TheoremReport r = theorem_hit_check(fx.k, fx.f, fx.f, fx.pi, fx.pi);
  EXPECT_TRUE(r.well_defined);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.first_failure().find("phi"), std::string::npos) << r.first_failure();
}

TEST(Convolution, Corollary3OnSmallWeights) {
  for (const CartesianStructure& cart : cartesian_fixtures()) {
    const std::vector<Weight> ws = weight_fixtures(cart.base(), 2);
    for (const SetFunctor& f : filter_indicators(cart)) {
      const TheoremReport r = corollary3_check(f, cart, ws.front(), ws.back());
      EXPECT_TRUE(r.ok()) << cart.base()->name() << ": " << r.first_failure();
    }
  }
}

TEST(Convolution, Corollary4RoutesAgreeOnDiamond) {
  const CartesianStructure cd = *derive_cartesian(diamond_category()).structure;
  const CartesianStructure cc = *derive_cartesian(chain_category(3)).structure;
  const CatFunctor j = thin_functor(cd.base(), cc.base(), {0, 0, 2, 2});
  for (const SetFunctor& f : filter_indicators(cd)) {
    const Corollary4Report r = corollary4_check(j, cd, cc, f);
    EXPECT_TRUE(r.routes_agree) << r.agreement_detail;
    EXPECT_TRUE(r.ok());
  }
}

}  // namespace
}  // namespace kanext
