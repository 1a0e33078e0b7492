#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kanext/colimit.hpp"
#include "kanext/convolution.hpp"
#include "kanext/monoidal.hpp"

namespace kanext {

struct NamedCategory {
  std::string name;
  CatRef cat;
};

/// Every shipped category: at most 6 objects and hom-sets of at most 4 elements.
std::vector<NamedCategory> shipped_categories();
/// The lattices: chains of 1 to 6 elements, the diamond and the 2×3 grid.
std::vector<NamedCategory> lattice_fixtures();
/// Chains of 2 to 4 elements and the diamond.
std::vector<NamedCategory> mates_posets();

/// Constants, representables and seeded random functors with sets of at most
/// `max_set` elements, in a fixed order.
std::vector<SetFunctor> functor_fixtures(const CatRef& c, std::size_t max_set = 3);
std::vector<Weight> weight_fixtures(const CatRef& c, std::size_t max_set = 3);

/// Indicators of the filters of a thin cartesian category: up-closed subsets
/// containing the terminal object and closed under binary products. These are
/// exactly its strong monoidal functors into (FinSet, ×) up to iso.
std::vector<SetFunctor> filter_indicators(const CartesianStructure& cart);

/// Object maps between thin cartesian categories that are monotone and send
/// products to products and the terminal object to the terminal object.
std::vector<CatFunctor> meet_top_preserving_maps(const CartesianStructure& a,
                                                 const CartesianStructure& b);

/// Every Galois connection S ⊣ T with S : c → a and T : a → c between thin categories.
std::vector<Adjunction> galois_connections(const CatRef& c, const CatRef& a);

/// diamond → chain3 with bot ↦ 0, x ↦ 1, y ↦ 1, top ↦ 2: monotone, keeps the top,
/// sends the meet of x and y to 0 although their images meet at 1.
struct NonMeetPreservingFixture {
  CartesianStructure a;
  CartesianStructure b;
  CatFunctor j;
  SetFunctor f;  // the indicator of the filter {top}
};

NonMeetPreservingFixture non_meet_preserving_fixture();

/// The two-element monoid {e, a} with a·a = a acting on the one-object structure.
struct LaxModuleFixture {
  PromonoidalStructure pi;
  PromonoidalModule k;
  SetFunctor f;  // a two-element functor on the base
};

LaxModuleFixture lax_module_fixture();

/// Deterministic draws: `rng() % n`, independent of the standard library's
/// distribution implementations.
std::size_t draw(std::mt19937_64& rng, std::size_t n);

/// A random category with at most `max_objects` objects and hom-sets of at
/// most `max_hom` elements, by rejection on random composition tables.
CatRef random_category(std::mt19937_64& rng, std::size_t max_objects, std::size_t max_hom);
/// Rejection sampling; nullopt when `tries` draws all fail functoriality.
std::optional<SetFunctor> random_functor(const CatRef& c, std::mt19937_64& rng,
                                         std::size_t max_set, std::size_t tries = 500);
std::optional<Weight> random_weight(const CatRef& c, std::mt19937_64& rng, std::size_t max_set,
                                    std::size_t tries = 500);

struct FubiniInstance {
  Weight w1;
  Weight w2;
  SetFunctor f;  // over tensor_category(w1.base, w2.base)
  std::string description;
};

/// Categories with at most 3 objects and hom-sets of at most 2, sets of at most 3.
FubiniInstance random_fubini_instance(std::mt19937_64& rng);

}  // namespace kanext
