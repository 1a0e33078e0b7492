#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanext/kan.hpp"
#include "kanext/monoidal.hpp"

namespace kanext {

/// A term over operation symbols and variables x1, x2, ...
struct Term {
  std::size_t var = npos;  // 0-based variable index, or npos for an application
  std::string op;
  std::vector<Term> args;

  static Term variable(std::size_t i) { return Term{i, "", {}}; }
  static Term apply(std::string op, std::vector<Term> args = {}) {
    return Term{npos, std::move(op), std::move(args)};
  }
  bool is_variable() const { return var != npos; }
  /// One more than the largest variable index occurring.
  std::size_t variable_bound() const;
};

std::string to_string(const Term& t);
bool operator==(const Term& a, const Term& b);

struct Operation {
  std::string name;
  std::size_t arity = 0;
};

struct Equation {
  Term lhs;
  Term rhs;
};

struct TheoryPresentation {
  std::string name;
  std::vector<Operation> operations;
  std::vector<Equation> equations;
  std::size_t truncation = 3;  // objects x^0 .. x^N
};

/// Parses "e", "x2", "m(x1,e(x2))". Identifiers x<k> with k ≥ 1 are variables
/// unless declared as operations.
Term parse_term(const std::string& text, const std::vector<Operation>& ops);

ValidationReport validate_presentation(const TheoryPresentation& p);

/// The free algebra on m generators: congruence classes of terms in x1..xm.
struct FreeAlgebra {
  std::size_t variables = 0;
  std::vector<Term> representatives;             // one term per class
  FinSet classes;                                // labeled by representative
  std::vector<std::size_t> variable_class;       // class of x_{i+1}
  std::vector<std::vector<std::size_t>> tables;  // per operation, argument tuple in base |classes|

  std::size_t size() const { return representatives.size(); }
  std::size_t apply(std::size_t op, const std::vector<std::size_t>& args) const;
};

/// Saturates terms in m variables under the operations and equations until no
/// new class appears; throws Error once more than `guard` classes exist.
FreeAlgebra free_algebra(const TheoryPresentation& p, std::size_t m, std::size_t guard = 10000);

/// x^0 .. x^N with hom(x^m, x^n) the n-tuples of classes of the m-variable free
/// algebra and composition by substitution. x^i ⋆ x^j = x^{i+j} when i+j ≤ N.
struct TruncatedTheory {
  TheoryPresentation presentation;
  std::vector<FreeAlgebra> algebras;  // index m
  CatRef category;
  CartesianStructure cartesian;
  std::vector<std::size_t> hom_offset;  // first morphism of hom(x^m, x^n), index m*(N+1)+n

  std::size_t truncation() const { return presentation.truncation; }
  std::size_t morphism(std::size_t m, const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> tuple(std::size_t morphism) const;
  /// The projection x^n → x onto coordinate i.
  std::size_t projection(std::size_t n, std::size_t i) const;
  /// o(x1, ..., xk) : x^k → x.
  std::size_t operation_morphism(std::size_t op) const;
};

TruncatedTheory build_truncated_theory(const TheoryPresentation& p, std::size_t guard = 10000);

/// A finite-product-preserving functor T → FinSet together with the operation
/// tables it induces on its carrier M(x).
struct TheoryModel {
  SetFunctor functor;
  FinSet carrier;
  std::vector<std::vector<std::size_t>> operations;  // argument tuple in base |carrier|
};

/// The functor of a carrier with operation tables, checking the equations.
TheoryModel model_from_operations(const TruncatedTheory& t, const FinSet& carrier,
                                  const std::vector<std::vector<std::size_t>>& operations);

/// Reads the operation tables off a functor; throws when M(x^n) is not M(x)^n
/// through the projections.
TheoryModel model_from_functor(const TruncatedTheory& t, const SetFunctor& f);

/// Functoriality and product preservation through the canonical comparisons.
ValidationReport validate_model(const TruncatedTheory& t, const SetFunctor& f);

/// Every model with |M(x)| ≤ max_carrier on carriers "0".."k-1", by carrier
/// size and then lexicographically in the operation tables.
std::vector<TheoryModel> enumerate_models(const TruncatedTheory& t, std::size_t max_carrier,
                                          std::size_t limit = 100000);

/// Model morphisms M ⇒ X; each is determined by its component at x.
std::vector<SetTransformation> model_morphisms(const TruncatedTheory& t, const TheoryModel& m,
                                               const TheoryModel& x, std::size_t limit = 100000);

/// A bijection of carriers commuting with the operations, if any.
std::optional<std::vector<std::size_t>> model_isomorphism(const TruncatedTheory& t,
                                                          const TheoryModel& a,
                                                          const TheoryModel& b);

/// The identity-on-objects functor sending each operation of `from` to a term
/// of `to` in as many variables as its arity. Throws when an equation of
/// `from` fails in `to`.
CatFunctor theory_morphism(const TruncatedTheory& from, const TruncatedTheory& to,
                           const std::vector<Term>& interpretation);

/// X ∘ θ, checked to be a model of the source theory.
TheoryModel algebraic_functor(const CatFunctor& theta, const TruncatedTheory& from,
                              const TruncatedTheory& to, const TheoryModel& x);

struct FreeModelResult {
  LanResult lan;
  std::optional<TheoryModel> model;
  std::string failure;    // why lan is not a model, when it is not
  TheoremReport theorem;  // main_theorem_check on the truncated structures
};

FreeModelResult free_model(const CatFunctor& theta, const TruncatedTheory& from,
                           const TruncatedTheory& to, const TheoryModel& m);

/// Hom(Lan_θ M, X) ≅ Hom(M, X θ) via β ↦ βθ ∘ η for every listed pair, and
/// naturality of that bijection along model morphisms in each variable.
struct AdjunctionReport {
  bool bijective = false;
  bool natural = false;
  std::size_t pairs = 0;
  std::size_t morphisms = 0;  // Σ |Hom(Lan M, X)|
  std::size_t naturality_squares = 0;
  std::string detail;

  bool ok() const { return bijective && natural; }
};

AdjunctionReport adjunction_check(const CatFunctor& theta, const TruncatedTheory& from,
                                  const TruncatedTheory& to,
                                  const std::vector<TheoryModel>& models_from,
                                  const std::vector<TheoryModel>& models_to);

}  // namespace kanext
