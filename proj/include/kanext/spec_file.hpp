#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kanext/category.hpp"
#include "kanext/colimit.hpp"
#include "kanext/convolution.hpp"
#include "kanext/lawvere.hpp"
#include "kanext/monoidal.hpp"

namespace kanext {

struct SourceLocation {
  std::size_t line = 0;    // 1-based; 0 for commands given outside a file
  std::size_t column = 0;  // 1-based
};

/// A parse failure with its position in the spec file.
class SpecError : public Error {
 public:
  SpecError(SourceLocation where, const std::string& message);
  SourceLocation where() const { return where_; }

 private:
  SourceLocation where_;
};

/// Entities of one kind in declaration order.
template <class T>
struct Table {
  std::vector<std::string> order;
  std::map<std::string, T> entries;

  bool contains(const std::string& name) const { return entries.count(name) > 0; }
  const T& at(const std::string& name) const { return entries.at(name); }
  std::size_t size() const { return order.size(); }
  void add(const std::string& name, T value) {
    order.push_back(name);
    entries.emplace(name, std::move(value));
  }
};

struct NatTransEntry {
  std::string src;
  std::string dst;
  SetTransformation alpha;
};

struct CartesianEntry {
  std::string category;
  CartesianStructure structure;
};

struct ModuleEntry {
  PromonoidalModule module;
  PromonoidalStructure source;  // on A
  PromonoidalStructure target;  // on B
};

struct TheoryMorphismEntry {
  std::string from;
  std::string to;
  CatFunctor functor;
};

struct Command {
  SourceLocation where;
  std::string text;                // as written, whitespace normalized
  std::vector<std::string> words;  // text split on whitespace
};

/// A resolved spec file. Every name is unique across all sections.
struct SpecFile {
  Table<FinSet> sets;
  Table<CatRef> categories;
  Table<CatFunctor> functors;          // between categories
  Table<SetFunctor> set_functors;      // into finite sets
  Table<NatTransEntry> nat_trans;
  Table<Weight> weights;
  Table<MonoidalStructure> monoidal;
  Table<CartesianEntry> cartesian;
  Table<PromonoidalStructure> promonoidal;
  Table<ModuleEntry> modules;
  Table<TruncatedTheory> theories;
  Table<TheoryMorphismEntry> theory_morphisms;
  std::vector<Command> commands;

  /// The section a name was declared in, or empty.
  std::string kind_of(const std::string& name) const;
  /// The cartesian structure declared for `c`, if any.
  const CartesianStructure* cartesian_for(const CatRef& c) const;
};

/// Parses and resolves a spec file; throws SpecError at the first problem.
SpecFile parse_spec(const std::string& text);

/// A command given outside the file, checked like the [commands] section.
/// Built-in theories it names are added to `spec`.
Command make_command(SpecFile& spec, const std::vector<std::string>& words);

/// The theories every spec file can refer to without declaring them:
/// "sets" (no operations), "pointed-sets" (a constant e) and "m-sets" (a unary
/// s with s(s(x1)) = x1, actions of the two-element group).
std::vector<TheoryPresentation> builtin_theories();

/// A thin monoidal structure from its object tensor table; morphism tensors,
/// associators and unitors are the unique arrows. Throws when one is missing.
MonoidalStructure thin_monoidal(const CatRef& c, const std::vector<std::size_t>& tensor,
                                std::size_t unit);

}  // namespace kanext
