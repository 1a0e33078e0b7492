#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanext/colimit.hpp"
#include "kanext/monoidal.hpp"

namespace kanext {

/// Lan_J F computed pointwise: (Lan_J F)(b) = colim(B(J−, b), F).
struct LanResult {
  CatFunctor j;
  SetFunctor f;
  std::vector<ColimitObject> colimits;  // one per object of B
  SetFunctor lan;
  std::vector<FinFunction> unit;        // η_a : F a → (Lan_J F)(J a)
};

/// The weight B(J−, b) over A.
Weight lan_weight(const CatFunctor& j, std::size_t b);

LanResult pointwise_lan(const CatFunctor& j, const SetFunctor& f);

/// Every α : F ⇒ G J factors as β J ∘ η for exactly one β : Lan_J F ⇒ G.
struct UniversalReport {
  bool ok = false;
  std::size_t transformations_from_f = 0;    // |Nat(F, G J)|
  std::size_t transformations_from_lan = 0;  // |Nat(Lan_J F, G)|
  std::string detail;
};

UniversalReport lan_universal_check(const LanResult& lan, const SetFunctor& g,
                                    std::size_t limit = 10000);

/// One link of an isomorphism chain, aggregated over all instances it was
/// computed at. `detail` cites the first instance that is not a bijection.
struct LinkResult {
  std::string name;
  bool computed = false;
  bool invertible = false;
  std::size_t instances = 0;
  std::string detail;
};

/// Outcome of checking that Lan_J F is strong monoidal for cartesian A, B and
/// strong monoidal F : A → FinSet, link by link.
struct TheoremReport {
  std::vector<std::string> precondition_failures;
  std::vector<std::string> notes;
  std::vector<LinkResult> links;       // interchange, fubini, F-constraint, mates, B-cartesian, def-K
  std::vector<LinkResult> unit_links;  // phi0, co-Yoneda, mates, definitional, terminal weight
  bool composite_matches_canonical = false;
  std::string composite_detail;
  bool natural = false;
  std::string naturality_detail;
  /// The comparison maps exist and are natural, invertible or not.
  bool well_defined = false;
  /// Ground truth: the canonical comparison K(b1⋆b2) → K b1 × K b2 and
  /// K N → 1 are bijections at every checked instance.
  bool canonical_strong = false;
  std::string canonical_detail;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;

  bool preconditions_ok() const { return precondition_failures.empty(); }
  bool ok() const;
  /// "precondition: ...", "link mates: ..." and so on; empty when ok().
  std::string first_failure() const;
};

struct MainTheoremOptions {
  /// Require J to be strong monoidal (the canonical comparison J(a⋆b) → Ja⋆Jb
  /// invertible) as a precondition.
  bool require_strong_j = true;
  MonoidalCheckOptions structure_checks;
};

/// F's monoidal constraint comes from `f_data`; its canonical cartesian
/// constraint is used when absent.
TheoremReport main_theorem_check(const CatFunctor& j, const CartesianStructure& a,
                                 const CartesianStructure& b, const SetFunctor& f,
                                 const std::optional<SetMonoidalData>& f_data = std::nullopt,
                                 const MainTheoremOptions& options = {});

/// Collapses per-instance outcomes into a LinkResult.
void record_link(LinkResult& link, const IsoWitness& iso, const std::string& where);

}  // namespace kanext
