#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kanext/finset.hpp"

namespace kanext {

/// Collected violations of some axiom family. Only the first `kMaxCited`
/// instances are kept verbatim; `total` counts all of them.
struct ValidationReport {
  static constexpr std::size_t kMaxCited = 32;

  std::vector<std::string> violations;
  std::vector<std::string> notes;  // skipped or truncated checks
  std::size_t total = 0;

  bool ok() const { return total == 0; }
  void add(std::string what);
  void merge(const ValidationReport& other, const std::string& prefix = "");
  std::string summary() const;
};

struct Morphism {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
};

/// A finite category with an explicit, total composition table.
///
/// Morphisms are numbered globally; `hom(a, b)` lists them in index order and
/// `hom_set(a, b)` exposes the same list as a FinSet of labels. Labels default
/// to "src->dst:name" and are unique within the category. Composition is
/// stored per object triple, so lookups are O(1) without a dense m×m table.
class FinCategory {
 public:
  const std::string& name() const { return name_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object(std::size_t a) const { return objects_.at(a); }
  std::size_t object_index(std::string_view name) const;

  const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
  const std::string& label(std::size_t m) const { return labels_.at(m); }
  std::size_t morphism_index(std::string_view label) const;
  std::size_t src(std::size_t m) const { return morphisms_[m].src; }
  std::size_t dst(std::size_t m) const { return morphisms_[m].dst; }

  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const {
    return hom_[a * objects_.size() + b];
  }
  const FinSet& hom_set(std::size_t a, std::size_t b) const {
    return hom_sets_[a * objects_.size() + b];
  }
  /// Position of m inside hom(src m, dst m) (and inside its hom_set).
  std::size_t hom_position(std::size_t m) const { return hom_pos_[m]; }
  std::size_t identity(std::size_t a) const { return identity_.at(a); }
  bool is_identity(std::size_t m) const { return identity_[src(m)] == m; }

  /// g ∘ f, or npos when the pair is not composable or the table has no entry.
  std::size_t compose(std::size_t g, std::size_t f) const;

  bool is_thin() const;
  /// The unique morphism a → b of a thin category, or npos.
  std::size_t unique_morphism(std::size_t a, std::size_t b) const;

  /// Same objects, morphisms, labels and composition; names may differ.
  bool same_structure(const FinCategory& other) const;
  bool operator==(const FinCategory& other) const {
    return name_ == other.name_ && same_structure(other);
  }

 private:
  friend class CategoryBuilder;

  std::string name_;
  std::vector<std::string> objects_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::vector<Morphism> morphisms_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> label_index_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<FinSet> hom_sets_;
  std::vector<std::size_t> hom_pos_;
  std::vector<std::size_t> identity_;
  std::vector<std::size_t> block_offset_;  // per (a,b,c)
  std::vector<std::size_t> comp_;
};

using CatRef = std::shared_ptr<const FinCategory>;

bool same_category(const CatRef& a, const CatRef& b);

/// Incremental construction of a FinCategory. With `auto_identities` every
/// new object receives an identity morphism named "id" (or the given name) and
/// identity composites are filled in at build time.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name, bool auto_identities = true);

  std::size_t add_object(std::string name, std::string identity_name = "id");
  std::size_t add_morphism(std::string name, std::size_t src, std::size_t dst,
                           std::string label = "");
  void set_identity(std::size_t object, std::size_t morphism);
  void set_composite(std::size_t g, std::size_t f, std::size_t h);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  std::size_t object_index(std::string_view name) const;
  std::size_t morphism_by_name(std::size_t src, std::size_t dst, std::string_view name) const;

  /// Never throws on axiom violations; run validate_category for those.
  CatRef build() const;

 private:
  std::string name_;
  bool auto_identities_;
  std::vector<std::string> objects_;
  std::vector<std::size_t> identity_;
  std::vector<Morphism> morphisms_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> composites_;
};

ValidationReport validate_category(const FinCategory& c);

CatRef opposite(const CatRef& c);

/// Product category. Object (a,b) has index a*|B|+b and morphism (f,g) has
/// index f*|mor B|+g.
CatRef tensor_category(const CatRef& a, const CatRef& b);

inline std::size_t tensor_object(const FinCategory& b, std::size_t x, std::size_t y) {
  return x * b.object_count() + y;
}
inline std::size_t tensor_morphism(const FinCategory& b, std::size_t f, std::size_t g) {
  return f * b.morphism_count() + g;
}

/// Full subcategory of A × B on the pairs accepted by `keep`, with the index
/// translation in both directions. With every pair kept, `cat` coincides with
/// tensor_category(A, B).
struct PairCategory {
  CatRef cat;
  CatRef left;
  CatRef right;
  std::vector<std::size_t> object_of;    // a*|B|+b → object, or npos
  std::vector<std::size_t> morphism_of;  // f*|mor B|+g → morphism, or npos
  std::vector<std::pair<std::size_t, std::size_t>> objects;
  std::vector<std::pair<std::size_t, std::size_t>> morphisms;

  std::size_t object(std::size_t a, std::size_t b) const {
    return object_of[a * right->object_count() + b];
  }
  std::size_t morphism(std::size_t f, std::size_t g) const {
    return morphism_of[f * right->morphism_count() + g];
  }
};

PairCategory pair_category(const CatRef& a, const CatRef& b,
                           const std::function<bool(std::size_t, std::size_t)>& keep);

// Builders ------------------------------------------------------------------

CatRef unit_category();  // one object "0"
CatRef discrete_category(std::size_t n, std::string name = "");
/// Thin category from a generating relation; the reflexive-transitive closure
/// is taken. Morphisms are named "le".
CatRef poset_category(std::string name, const std::vector<std::string>& objects,
                      const std::vector<std::pair<std::string, std::string>>& less_eq);
CatRef chain_category(std::size_t n);  // 0 < 1 < ... < n-1
CatRef diamond_category();             // bot < x, y < top
CatRef grid_category(std::size_t rows, std::size_t cols);
/// One object "*"; elements[0] is the identity; `mult[i][j]` is the index of
/// elements[i]·elements[j] (i after j).
CatRef monoid_category(std::string name, const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& mult);
/// Two objects a, b and `arrows` parallel morphisms a → b.
CatRef parallel_category(std::size_t arrows);

// Functors and transformations ------------------------------------------------

struct CatFunctor {
  CatRef dom;
  CatRef cod;
  std::vector<std::size_t> obj;
  std::vector<std::size_t> mor;

  std::size_t on_object(std::size_t a) const { return obj[a]; }
  std::size_t on_morphism(std::size_t m) const { return mor[m]; }
};

ValidationReport validate_functor(const CatFunctor& f);

CatFunctor identity_functor(const CatRef& c);
/// g ∘ f
CatFunctor compose(const CatFunctor& g, const CatFunctor& f);
/// Functor into a thin category determined by its object map; throws when a
/// required morphism is missing (the map is not monotone).
CatFunctor thin_functor(const CatRef& dom, const CatRef& cod, const std::vector<std::size_t>& obj);
/// F^op : C^op → D^op
CatFunctor opposite(const CatFunctor& f);
/// F × G : A × B → C × D
CatFunctor tensor_functor(const CatFunctor& f, const CatFunctor& g, const CatRef& dom,
                          const CatRef& cod);
bool operator==(const CatFunctor& a, const CatFunctor& b);

struct NatTrans {
  CatFunctor src;
  CatFunctor dst;
  std::vector<std::size_t> components;
};

ValidationReport validate_nat_trans(const NatTrans& t);

}  // namespace kanext
