#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanext/colimit.hpp"
#include "kanext/kan.hpp"
#include "kanext/monoidal.hpp"

namespace kanext {

/// A functor params → [base^op, FinSet]: one weight per parameter object and,
/// for each g : p → p', a transformation weights[p] ⇒ weights[p'].
struct WeightFamily {
  CatRef params;
  CatRef base;
  std::vector<Weight> weights;
  std::vector<SetTransformation> action;
};

ValidationReport validate_weight_family(const WeightFamily& fam);

/// p ↦ colim(weights[p], F), functorial in p through colimit_map.
struct FamilyColimit {
  std::vector<ColimitObject> colimits;
  SetFunctor result;  // over params
};

FamilyColimit family_colimit(const WeightFamily& fam, const SetFunctor& f);

/// P(A₁,A₂,A), contravariant in A₁, A₂ and covariant in A, stored curried:
/// p.weights[A] is P(−,−,A) over A ⊗ A. The unit J is covariant.
struct PromonoidalStructure {
  CatRef base;
  PairCategory pairs;
  WeightFamily p;
  SetFunctor unit;
};

/// Functoriality of P and J. With functor fixtures given, also compares the
/// sizes of (M∗N)∗L and M∗(N∗L), and of J∗M, M, M∗J, objectwise.
ValidationReport validate_promonoidal(const PromonoidalStructure& p,
                                      const std::vector<SetFunctor>& fixtures = {});

/// P(A₁,A₂,A) = A(A, A₁⋆A₂) and J(A) = A(A, N), as a structure on A^op.
PromonoidalStructure promonoidal_from_monoidal(const CartesianStructure& cart);

struct ConvolutionResult {
  std::vector<ColimitObject> colimits;  // (M∗N)(A) for each A
  SetFunctor result;
};

/// (M∗N)(A) = colim over A⊗A of (P(−,−,A), M ⊠ N).
ConvolutionResult day_convolve(const SetFunctor& m, const SetFunctor& n,
                               const PromonoidalStructure& p);

/// The natural map (M∗N)(A) → M A × N A induced by the projections of a
/// cartesian structure, for convolution from promonoidal_from_monoidal.
/// Components are indexed by the objects of A^op = objects of A.
SetTransformation convolution_to_pointwise(const ConvolutionResult& conv,
                                           const CartesianStructure& cart, const SetFunctor& m,
                                           const SetFunctor& n);

/// A module K : B → A stored as K(A,B) over op(A) ⊗ B, with
/// φ_{A₁,A₂,B} : colim_{B₁,B₂}(P_B(B₁,B₂,B), K(A₁,B₁) × K(A₂,B₂)) → colim_A(K(A,B), P_A(A₁,A₂,A))
/// and φ₀_B : J_B(B) → colim_A(K(A,B), J_A(A)).
struct PromonoidalModule {
  CatRef a;
  CatRef b;
  PairCategory domain;  // op(A) ⊗ B
  SetFunctor k;
  std::vector<FinFunction> phi;   // index (a1*|A| + a2)*|B| + b
  std::vector<FinFunction> phi0;  // index b
  bool strong = false;

  std::size_t phi_index(std::size_t a1, std::size_t a2, std::size_t y) const {
    return (a1 * a->object_count() + a2) * b->object_count() + y;
  }
};

/// K(−, b) over A.
Weight module_weight(const PromonoidalModule& k, std::size_t b);
/// K(a, −) over B.
SetFunctor module_functor(const PromonoidalModule& k, std::size_t a);
/// b ↦ K(−, b), the family whose colimits give ∃_K.
WeightFamily module_family(const PromonoidalModule& k);

/// The colimit φ_{a1,a2,b} starts from.
ColimitObject phi_domain(const PromonoidalModule& k, const PromonoidalStructure& pb,
                         std::size_t a1, std::size_t a2, std::size_t b);
/// The colimit φ_{a1,a2,b} lands in.
ColimitObject phi_codomain(const PromonoidalModule& k, const PromonoidalStructure& pa,
                           std::size_t a1, std::size_t a2, std::size_t b);
/// colim_A(K(A,b), J_A A), the target of φ₀_b.
ColimitObject unit_codomain(const PromonoidalModule& k, const PromonoidalStructure& pa,
                            std::size_t b);

struct ModuleCheckOptions {
  /// Compatibility of φ, φ₀ with the associativity and unit witnesses is an
  /// interpretation of unstated axioms; it is not attempted and reported so.
  bool naturality = true;
};

ValidationReport validate_promonoidal_module(const PromonoidalModule& k,
                                             const PromonoidalStructure& pa,
                                             const PromonoidalStructure& pb,
                                             const ModuleCheckOptions& options = {});

/// (∃_K F)(B) = colim_A(K(A,B), F A).
FamilyColimit exists_k(const PromonoidalModule& k, const SetFunctor& f);

// Module builders ----------------------------------------------------------------

/// K(A,B) = A(A,B); strong by co-Yoneda.
PromonoidalModule identity_module(const PromonoidalStructure& pa);

/// K(A,B) = B(B, JA) between the structures promonoidal_from_monoidal(cartA)
/// and promonoidal_from_monoidal(cartB) on A^op and B^op, with φ and φ₀ built
/// from the monoidal constraints of J. `pa`, `pb` must be those structures.
PromonoidalModule corollary1_module(const MonoidalFunctorData& j, const CartesianStructure& cart_a,
                                    const CartesianStructure& cart_b,
                                    const PromonoidalStructure& pa,
                                    const PromonoidalStructure& pb);

/// K(A,0) = W(A) for a monoidal W : A → FinSet, from the structure on A^op to
/// the one on I^op.
PromonoidalModule corollary2_module(const SetMonoidalData& w, const CartesianStructure& cart_a,
                                    const PromonoidalStructure& pa,
                                    const PromonoidalStructure& pi);

/// Over the one-object structure: K(0,0) = M for a finite monoid M (elements[0]
/// the identity), φ the multiplication and φ₀ the identity element. Lax, never
/// strong unless M is trivial.
PromonoidalModule monoid_module(const PromonoidalStructure& pi,
                                const std::vector<std::string>& elements,
                                const std::vector<std::vector<std::size_t>>& mult);

// Checkers -------------------------------------------------------------------------

/// The calculation ∃F₁ ∗ ∃F₂ ⟶ ∃(F₁ ∗ F₂) link by link, plus the unit map φ₀.
/// `well_defined` in the report records that the composite exists and is natural.
TheoremReport theorem_hit_check(const PromonoidalModule& k, const SetFunctor& f1,
                                const SetFunctor& f2, const PromonoidalStructure& pa,
                                const PromonoidalStructure& pb);

/// colim(W₁ ∗ W₂, F) ≅ colim(W₁, F) × colim(W₂, F) for weights over a cartesian
/// A, and colim(J, F) ≅ 1.
TheoremReport corollary3_check(const SetFunctor& f, const CartesianStructure& cart,
                               const Weight& w1, const Weight& w2,
                               const std::optional<SetMonoidalData>& f_data = std::nullopt);

/// Lan_J F two ways: directly, and as B ↦ B(J−, B) followed by colim(−, F).
struct Corollary4Report {
  bool routes_agree = false;
  std::string agreement_detail;
  TheoremReport direct;   // main_theorem_check
  TheoremReport nerve;    // strong monoidality of B(J−, ·) and of colim(−, F)
  bool verdicts_agree = false;

  bool ok() const { return routes_agree && verdicts_agree && direct.ok() && nerve.ok(); }
};

Corollary4Report corollary4_check(const CatFunctor& j, const CartesianStructure& cart_a,
                                  const CartesianStructure& cart_b, const SetFunctor& f,
                                  const MainTheoremOptions& options = {});

}  // namespace kanext
