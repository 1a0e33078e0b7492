#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanext/category.hpp"
#include "kanext/colimit.hpp"

namespace kanext {

/// A monoidal structure on a finite category, possibly partial: the tensor of
/// objects may be undefined on some pairs (npos), as happens for truncated
/// Lawvere theories. Morphism tensors, associators and unitors are recorded
/// exactly where their endpoints are defined.
struct MonoidalStructure {
  CatRef base;
  std::vector<std::size_t> tensor_obj;   // a*n+b
  std::vector<std::size_t> tensor_mor;   // f*m+g
  std::size_t unit = npos;
  std::vector<std::size_t> associator;   // (a⋆b)⋆c → a⋆(b⋆c), index (a*n+b)*n+c
  std::vector<std::size_t> left_unitor;  // N⋆a → a
  std::vector<std::size_t> right_unitor; // a⋆N → a

  std::size_t object_count() const { return base->object_count(); }
  bool defined(std::size_t a, std::size_t b) const { return tensor(a, b) != npos; }
  bool total() const;
  std::size_t tensor(std::size_t a, std::size_t b) const {
    return tensor_obj[a * base->object_count() + b];
  }
  std::size_t tensor_morphism(std::size_t f, std::size_t g) const {
    return tensor_mor[f * base->morphism_count() + g];
  }
  std::size_t alpha(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t n = base->object_count();
    return associator[(a * n + b) * n + c];
  }

  /// The pairs on which the tensor is defined, as a full subcategory of A × A.
  PairCategory defined_pairs() const;
  /// ⋆ as a functor on defined_pairs().
  CatFunctor tensor_functor(const PairCategory& pairs) const;
};

struct MonoidalCheckOptions {
  bool naturality = true;
  bool coherence = true;  // pentagon and triangle
};

ValidationReport validate_monoidal(const MonoidalStructure& m,
                                   const MonoidalCheckOptions& options = {});

/// A cartesian monoidal structure with its product cones and terminal maps.
struct CartesianStructure {
  MonoidalStructure monoidal;
  std::vector<std::size_t> proj1;     // a⋆b → a
  std::vector<std::size_t> proj2;     // a⋆b → b
  std::vector<std::size_t> terminal;  // a → N

  const CatRef& base() const { return monoidal.base; }
  std::size_t p1(std::size_t a, std::size_t b) const {
    return proj1[a * monoidal.object_count() + b];
  }
  std::size_t p2(std::size_t a, std::size_t b) const {
    return proj2[a * monoidal.object_count() + b];
  }
  /// ⟨f, g⟩ : x → a⋆b for f : x → a and g : x → b, or npos if a⋆b is undefined.
  std::size_t pairing(std::size_t f, std::size_t g) const;
};

/// Either a structure or the first obstruction found.
struct CartesianSearch {
  std::optional<CartesianStructure> structure;
  std::string failure;
};

/// Finds a terminal object and binary products by exhaustive search. The
/// terminal object is the first one in object order; the product cone of
/// (a, b) is the first (p, π1, π2) in object-then-morphism order. With
/// `allow_partial`, pairs without a product are left undefined.
CartesianSearch derive_cartesian(const CatRef& c, bool allow_partial = false);

/// Universal property of every recorded product and of the terminal object,
/// plus the monoidal axioms of the induced structure.
ValidationReport validate_cartesian(const CartesianStructure& c,
                                    const MonoidalCheckOptions& options = {});

/// Δ ⊣ ⋆ with unit ⟨id, id⟩ and counit (π1, π2). Requires a total structure.
Adjunction diagonal_adjunction(const CartesianStructure& c);
/// E ⊣ N with E : A → I, unit the terminal maps and counit the identity.
Adjunction terminal_adjunction(const CartesianStructure& c);

/// Constraint data making a functor between monoidal categories lax monoidal
/// (F a ⋆ F b → F(a⋆b), N → F N) or lax comonoidal (the reverse direction).
enum class ConstraintDirection { Monoidal, Comonoidal };

struct MonoidalFunctorData {
  CatFunctor functor;
  MonoidalStructure dom;
  MonoidalStructure cod;
  ConstraintDirection direction = ConstraintDirection::Monoidal;
  std::vector<std::size_t> tensor_constraint;  // a*n+b, npos where undefined
  std::size_t unit_constraint = npos;
  bool strong = false;
};

ValidationReport validate_monoidal_functor(const MonoidalFunctorData& f,
                                           const MonoidalCheckOptions& options = {});

/// The comparison F(a⋆b) → F a ⋆ F b induced by products, and its inverse when
/// every comparison is invertible.
struct CanonicalConstraints {
  MonoidalFunctorData comonoidal;
  std::optional<MonoidalFunctorData> strong;  // monoidal direction, when invertible
  std::string detail;                         // first non-invertible comparison
};

CanonicalConstraints constraints_from_cartesian(const CatFunctor& f, const CartesianStructure& dom,
                                                const CartesianStructure& cod);

/// The inverse of an isomorphism in a finite category, or npos.
std::size_t inverse_morphism(const FinCategory& c, std::size_t m);

/// A set-valued functor with monoidal constraints into (FinSet, ×):
/// Φ_{a,b} : F a × F b → F(a⋆b) and φ0 : 1 → F N.
struct SetMonoidalData {
  SetFunctor functor;
  MonoidalStructure dom;
  std::vector<Product> products;               // F a × F b, a*n+b
  std::vector<std::optional<FinFunction>> tensor_constraint;  // empty where a⋆b is undefined
  FinFunction unit_constraint;
  bool strong = false;
};

ValidationReport validate_set_monoidal(const SetMonoidalData& f,
                                       const MonoidalCheckOptions& options = {});

/// The comparison F(a⋆b) → F a × F b, (F π1, F π2), and F N → 1. When all of
/// them are bijections their inverses form a strong monoidal structure.
struct SetCanonicalConstraints {
  std::vector<std::optional<FinFunction>> comparison;
  FinFunction unit_comparison;
  std::optional<SetMonoidalData> strong;
  std::string detail;
};

SetCanonicalConstraints set_constraints_from_cartesian(const SetFunctor& f,
                                                       const CartesianStructure& c);

}  // namespace kanext
