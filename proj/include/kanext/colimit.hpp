#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kanext/category.hpp"
#include "kanext/finset.hpp"

namespace kanext {

/// A functor base → FinSet. maps[m] : sets[src m] → sets[dst m].
struct SetFunctor {
  CatRef base;
  std::vector<FinSet> sets;
  std::vector<FinFunction> maps;
};

/// A functor base^op → FinSet, stored over `base`: maps[m] : sets[dst m] → sets[src m].
struct Weight {
  CatRef base;
  std::vector<FinSet> sets;
  std::vector<FinFunction> maps;
};

ValidationReport validate_set_functor(const SetFunctor& f);
ValidationReport validate_weight(const Weight& w);

/// The same data read over the opposite category.
Weight as_weight(const SetFunctor& f_on_opposite, const CatRef& base);
SetFunctor as_functor_on_opposite(const Weight& w);

/// A natural transformation between set-valued functors on the same base.
struct SetTransformation {
  std::vector<FinFunction> components;
};

ValidationReport validate_transformation(const SetFunctor& src, const SetFunctor& dst,
                                         const SetTransformation& t);
ValidationReport validate_transformation(const Weight& src, const Weight& dst,
                                         const SetTransformation& t);

SetFunctor constant_functor(const CatRef& base, const FinSet& value);
Weight constant_weight(const CatRef& base, const FinSet& value);
/// C(−, a0)
Weight hom_weight(const CatRef& c, std::size_t a0);
/// C(a0, −)
SetFunctor hom_functor(const CatRef& c, std::size_t a0);
/// G ∘ J
SetFunctor precompose(const SetFunctor& g, const CatFunctor& j);
/// W ∘ J^op
Weight precompose(const Weight& w, const CatFunctor& j);
/// (A, B) ↦ F A × G B over base = tensor_category(F.base, G.base).
SetFunctor external_product(const SetFunctor& f, const SetFunctor& g, const CatRef& base);
Weight external_product(const Weight& f, const Weight& g, const CatRef& base);
/// The same, restricted to the pairs of a PairCategory.
SetFunctor external_product(const SetFunctor& f, const SetFunctor& g, const PairCategory& pc);
Weight external_product(const Weight& f, const Weight& g, const PairCategory& pc);
/// A ↦ M A × N A
SetFunctor pointwise_product(const SetFunctor& m, const SetFunctor& n);
Weight pointwise_product(const Weight& m, const Weight& n);

/// colim(W, F): the quotient of ⊔_A W A × F A by the coend relation.
struct ColimitObject {
  std::shared_ptr<const Weight> weight_data;
  std::shared_ptr<const SetFunctor> functor_data;
  std::vector<Product> parts;              // W A × F A
  FinSet carrier;
  std::vector<FinFunction> coprojections;  // parts[A].set → carrier

  const Weight& weight() const { return *weight_data; }
  const SetFunctor& functor() const { return *functor_data; }
  std::size_t coproject(std::size_t a, std::size_t w, std::size_t x) const {
    return coprojections[a](parts[a].pair(w, x));
  }
};

ColimitObject weighted_colimit(const Weight& w, const SetFunctor& f);
ColimitObject weighted_colimit(std::shared_ptr<const Weight> w,
                               std::shared_ptr<const SetFunctor> f);

/// A cocone given pointwise: value(A, w, x) ∈ target for w ∈ W A, x ∈ F A.
using CoconeFn = std::function<std::size_t(std::size_t, std::size_t, std::size_t)>;

/// The first coend identification a cocone violates, if any.
std::optional<std::string> cocone_violation(const ColimitObject& c, const FinSet& target,
                                            const CoconeFn& cocone);

/// The unique h : carrier → target with h ∘ coproj_A = cocone_A.
/// Throws Error citing the violated identification when the cocone is invalid.
FinFunction colimit_factorize(const ColimitObject& c, const FinSet& target,
                              const CoconeFn& cocone);
FinFunction colimit_factorize(const ColimitObject& c, const std::vector<FinFunction>& cocone);

/// An explicit isomorphism between two computed objects, or the reason there is none.
struct IsoWitness {
  bool ok = false;
  std::optional<FinFunction> forward;
  std::optional<FinFunction> backward;
  std::string detail;
};

/// Bijectivity check of a comparison map; fills `backward` with the inverse.
IsoWitness iso_from_map(FinFunction map);

/// colim(W1, colim(W2, F)) ≅ colim(W1 ⊗ W2, F). The inner colimits form a
/// functor over A1 whose action comes from colimit_factorize.
struct FubiniResult {
  ColimitObject iterated;  // colim(W1, colim(W2, F))
  ColimitObject joint;     // colim(W1 ⊗ W2, F)
  IsoWitness iso;          // iterated → joint
};

FubiniResult fubini_check(const Weight& w1, const Weight& w2, const SetFunctor& f);

/// S ⊣ T with S : C → A and T : A → C, so that A(S c, a) ≅ C(c, T a).
/// unit_c : c → T S c in C; counit_a : S T a → a in A.
struct Adjunction {
  CatFunctor left;   // S
  CatFunctor right;  // T
  std::vector<std::size_t> unit;
  std::vector<std::size_t> counit;
};

ValidationReport validate_adjunction(const Adjunction& adj);

struct AdjunctionSearchLimits {
  std::size_t max_objects = 5;
  std::size_t max_hom = 4;
  std::size_t max_candidates = 2000000;
};

/// Exhaustive search for unit and counit. Throws Error when the categories
/// exceed the limits.
std::optional<Adjunction> verify_adjunction(const CatFunctor& left, const CatFunctor& right,
                                            const AdjunctionSearchLimits& limits = {});

/// colim(W S^op, G) ≅ colim(W, G T) via the unit and counit.
struct MatesResult {
  ColimitObject reindexed_weight;   // colim(W S^op, G), over C
  ColimitObject composed_functor;   // colim(W, G T), over A
  IsoWitness iso;                   // composed_functor → reindexed_weight
};

/// The counit-induced comparison colim(W, G T) → colim(W S^op, G).
FinFunction mates_counit_map(const ColimitObject& composed, const ColimitObject& reindexed,
                             const Adjunction& adj);
/// The unit-induced comparison colim(W S^op, G) → colim(W, G T).
FinFunction mates_unit_map(const ColimitObject& reindexed, const ColimitObject& composed,
                           const Adjunction& adj);

MatesResult mates_check(const Weight& w, const SetFunctor& g, const Adjunction& adj);

/// Co-Yoneda: colim(C(−, a0), F) → F(a0), (m, x) ↦ F(m)(x).
IsoWitness coyoneda_check(const SetFunctor& f, std::size_t a0);

/// Functoriality of colim(−, F) in the weight: α : W ⇒ W' induces
/// colim(W, F) → colim(W', F).
FinFunction colimit_map(const ColimitObject& from, const ColimitObject& to,
                        const SetTransformation& alpha);

/// All natural transformations src ⇒ dst, objectwise backtracking with
/// naturality pruning. Throws Error past `limit` results or search steps.
std::vector<SetTransformation> enumerate_transformations(const SetFunctor& src,
                                                         const SetFunctor& dst,
                                                         std::size_t limit = 10000);

}  // namespace kanext
