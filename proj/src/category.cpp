#include "kanext/category.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace kanext {

void ValidationReport::add(std::string what) {
  if (violations.size() < kMaxCited) violations.push_back(std::move(what));
  ++total;
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.violations) {
    if (violations.size() < kMaxCited) violations.push_back(prefix + v);
  }
  total += other.total;
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  out << total << " violation(s); first: " << violations.front();
  return out.str();
}

// FinCategory -------------------------------------------------------------------

std::size_t FinCategory::object_index(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) {
    throw Error("category " + name_ + " has no object '" + std::string(name) + "'");
  }
  return it->second;
}

std::size_t FinCategory::morphism_index(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) {
    throw Error("category " + name_ + " has no morphism '" + std::string(label) + "'");
  }
  return it->second;
}

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  const Morphism& mf = morphisms_[f];
  const Morphism& mg = morphisms_[g];
  if (mf.dst != mg.src) return npos;
  const std::size_t n = objects_.size();
  const std::size_t off = block_offset_[(mf.src * n + mf.dst) * n + mg.dst];
  return comp_[off + hom_pos_[g] * hom(mf.src, mf.dst).size() + hom_pos_[f]];
}

bool FinCategory::is_thin() const {
  for (const auto& h : hom_) {
    if (h.size() > 1) return false;
  }
  return true;
}

std::size_t FinCategory::unique_morphism(std::size_t a, std::size_t b) const {
  const auto& h = hom(a, b);
  return h.size() == 1 ? h.front() : npos;
}

bool FinCategory::same_structure(const FinCategory& other) const {
  if (objects_ != other.objects_ || labels_ != other.labels_ || identity_ != other.identity_ ||
      comp_ != other.comp_) {
    return false;
  }
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    if (morphisms_[m].src != other.morphisms_[m].src ||
        morphisms_[m].dst != other.morphisms_[m].dst ||
        morphisms_[m].name != other.morphisms_[m].name) {
      return false;
    }
  }
  return true;
}

bool same_category(const CatRef& a, const CatRef& b) {
  return a == b || (a && b && a->same_structure(*b));
}

// CategoryBuilder ----------------------------------------------------------------

CategoryBuilder::CategoryBuilder(std::string name, bool auto_identities)
    : name_(std::move(name)), auto_identities_(auto_identities) {}

std::size_t CategoryBuilder::add_object(std::string name, std::string identity_name) {
  for (const auto& o : objects_) {
    if (o == name) throw Error("duplicate object '" + name + "' in " + name_);
  }
  objects_.push_back(std::move(name));
  identity_.push_back(npos);
  std::size_t a = objects_.size() - 1;
  if (auto_identities_) identity_[a] = add_morphism(std::move(identity_name), a, a);
  return a;
}

std::size_t CategoryBuilder::add_morphism(std::string name, std::size_t src, std::size_t dst,
                                          std::string label) {
  if (src >= objects_.size() || dst >= objects_.size()) {
    throw Error("morphism '" + name + "' has an unknown endpoint");
  }
  if (label.empty()) label = objects_[src] + "->" + objects_[dst] + ":" + name;
  morphisms_.push_back(Morphism{std::move(name), src, dst});
  labels_.push_back(std::move(label));
  return morphisms_.size() - 1;
}

void CategoryBuilder::set_identity(std::size_t object, std::size_t morphism) {
  identity_.at(object) = morphism;
}

void CategoryBuilder::set_composite(std::size_t g, std::size_t f, std::size_t h) {
  composites_[{g, f}] = h;
}

std::size_t CategoryBuilder::object_index(std::string_view name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i] == name) return i;
  }
  throw Error("category " + name_ + " has no object '" + std::string(name) + "'");
}

std::size_t CategoryBuilder::morphism_by_name(std::size_t src, std::size_t dst,
                                              std::string_view name) const {
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    if (morphisms_[m].src == src && morphisms_[m].dst == dst && morphisms_[m].name == name) {
      return m;
    }
  }
  throw Error("category " + name_ + " has no morphism '" + std::string(name) + "' from " +
              objects_.at(src) + " to " + objects_.at(dst));
}

CatRef CategoryBuilder::build() const {
  auto c = std::make_shared<FinCategory>();
  c->name_ = name_;
  c->objects_ = objects_;
  for (std::size_t a = 0; a < objects_.size(); ++a) c->object_index_.emplace(objects_[a], a);
  c->morphisms_ = morphisms_;
  c->labels_ = labels_;
  for (std::size_t m = 0; m < labels_.size(); ++m) {
    if (!c->label_index_.emplace(labels_[m], m).second) {
      throw Error("duplicate morphism label '" + labels_[m] + "' in " + name_);
    }
  }
  c->identity_ = identity_;
  for (std::size_t a = 0; a < identity_.size(); ++a) {
    if (identity_[a] == npos) throw Error("object " + objects_[a] + " has no identity");
  }

  const std::size_t n = objects_.size();
  c->hom_.assign(n * n, {});
  c->hom_pos_.assign(morphisms_.size(), 0);
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    auto& h = c->hom_[morphisms_[m].src * n + morphisms_[m].dst];
    c->hom_pos_[m] = h.size();
    h.push_back(m);
  }
  c->hom_sets_.reserve(n * n);
  for (const auto& h : c->hom_) {
    std::vector<std::string> l;
    l.reserve(h.size());
    for (std::size_t m : h) l.push_back(labels_[m]);
    c->hom_sets_.emplace_back(std::move(l));
  }

  c->block_offset_.assign(n * n * n, 0);
  std::size_t offset = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        c->block_offset_[(a * n + b) * n + d] = offset;
        offset += c->hom_[a * n + b].size() * c->hom_[b * n + d].size();
      }
    }
  }
  c->comp_.assign(offset, npos);
  auto slot = [&](std::size_t g, std::size_t f) -> std::size_t& {
    const Morphism& mf = morphisms_[f];
    const std::size_t off = c->block_offset_[(mf.src * n + mf.dst) * n + morphisms_[g].dst];
    return c->comp_[off + c->hom_pos_[g] * c->hom_[mf.src * n + mf.dst].size() + c->hom_pos_[f]];
  };
  if (auto_identities_) {
    for (std::size_t m = 0; m < morphisms_.size(); ++m) {
      slot(m, identity_[morphisms_[m].src]) = m;
      slot(identity_[morphisms_[m].dst], m) = m;
    }
  }
  for (const auto& [gf, h] : composites_) {
    const auto [g, f] = gf;
    if (morphisms_.at(f).dst != morphisms_.at(g).src) {
      throw Error("composite set for non-composable pair " + labels_[g] + " . " + labels_[f]);
    }
    slot(g, f) = h;
  }
  return c;
}

// Validation ---------------------------------------------------------------------

ValidationReport validate_category(const FinCategory& c) {
  ValidationReport r;
  const std::size_t n = c.object_count();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t id = c.identity(a);
    if (c.src(id) != a || c.dst(id) != a) r.add("identity of " + c.object(a) + " is not an endomorphism");
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    if (c.compose(f, c.identity(c.src(f))) != f) r.add("f . id != f for f = " + c.label(f));
    if (c.compose(c.identity(c.dst(f)), f) != f) r.add("id . f != f for f = " + c.label(f));
  }
  // totality and typing of the table
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t f : c.hom(a, b)) {
          for (std::size_t g : c.hom(b, d)) {
            std::size_t h = c.compose(g, f);
            if (h == npos) {
              r.add("composite " + c.label(g) + " . " + c.label(f) + " undefined");
            } else if (c.src(h) != a || c.dst(h) != d) {
              r.add("composite " + c.label(g) + " . " + c.label(f) + " = " + c.label(h) +
                    " lands in the wrong hom-set");
            }
          }
        }
      }
    }
  }
  if (!r.ok()) return r;  // associativity is meaningless on a broken table
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t e = 0; e < n; ++e) {
          for (std::size_t f : c.hom(a, b)) {
            for (std::size_t g : c.hom(b, d)) {
              const std::size_t gf = c.compose(g, f);
              for (std::size_t h : c.hom(d, e)) {
                if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
                  r.add("associativity fails for (" + c.label(h) + ", " + c.label(g) + ", " +
                        c.label(f) + ")");
                }
              }
            }
          }
        }
      }
    }
  }
  return r;
}

// Constructions ------------------------------------------------------------------

namespace {

std::string opposite_name(const std::string& name) {
  if (name.size() > 4 && name.rfind("op(", 0) == 0 && name.back() == ')') {
    return name.substr(3, name.size() - 4);
  }
  return "op(" + name + ")";
}

}  // namespace

CatRef opposite(const CatRef& c) {
  CategoryBuilder b(opposite_name(c->name()), false);
  for (const auto& o : c->objects()) b.add_object(o);
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    b.add_morphism(c->morphism(m).name, c->dst(m), c->src(m), c->label(m));
  }
  for (std::size_t a = 0; a < c->object_count(); ++a) b.set_identity(a, c->identity(a));
  // f ∘op g = g ∘ f
  const std::size_t n = c->object_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t bb = 0; bb < n; ++bb) {
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t f : c->hom(a, bb)) {
          for (std::size_t g : c->hom(bb, d)) {
            std::size_t h = c->compose(g, f);
            if (h != npos) b.set_composite(f, g, h);
          }
        }
      }
    }
  }
  return b.build();
}

namespace {

struct PairKey {
  CatRef a;
  CatRef b;
  std::vector<bool> kept;

  bool operator<(const PairKey& o) const {
    if (a.get() != o.a.get()) return std::less<>()(a.get(), o.a.get());
    if (b.get() != o.b.get()) return std::less<>()(b.get(), o.b.get());
    return kept < o.kept;
  }
};

// Keyed by operand identity; the key keeps the operands alive.
struct PairCache {
  static constexpr std::size_t kCapacity = 512;
  std::mutex mutex;
  std::map<PairKey, PairCategory> entries;
};

PairCache& pair_cache() {
  static PairCache cache;
  return cache;
}

PairCategory build_pair_category(const CatRef& a, const CatRef& b, const std::vector<bool>& kept);

}  // namespace

PairCategory pair_category(const CatRef& a, const CatRef& b,
                           const std::function<bool(std::size_t, std::size_t)>& keep) {
  PairKey key{a, b, std::vector<bool>(a->object_count() * b->object_count())};
  for (std::size_t x = 0; x < a->object_count(); ++x) {
    for (std::size_t y = 0; y < b->object_count(); ++y) key.kept[x * b->object_count() + y] = keep(x, y);
  }
  PairCache& cache = pair_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  PairCategory out = build_pair_category(a, b, key.kept);
  std::lock_guard lock(cache.mutex);
  if (cache.entries.size() >= PairCache::kCapacity) cache.entries.clear();
  cache.entries.emplace(std::move(key), out);
  return out;
}

namespace {

PairCategory build_pair_category(const CatRef& a, const CatRef& b, const std::vector<bool>& kept) {
  PairCategory out;
  out.left = a;
  out.right = b;
  CategoryBuilder builder("(" + a->name() + " x " + b->name() + ")", false);
  const std::size_t nb = b->object_count();
  const std::size_t mb = b->morphism_count();
  out.object_of.assign(a->object_count() * nb, npos);
  out.morphism_of.assign(a->morphism_count() * mb, npos);
  for (std::size_t x = 0; x < a->object_count(); ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      if (!kept[x * nb + y]) continue;
      out.object_of[x * nb + y] =
          builder.add_object("(" + a->object(x) + "," + b->object(y) + ")");
      out.objects.emplace_back(x, y);
    }
  }
  for (std::size_t f = 0; f < a->morphism_count(); ++f) {
    for (std::size_t g = 0; g < mb; ++g) {
      const std::size_t s = out.object(a->src(f), b->src(g));
      const std::size_t d = out.object(a->dst(f), b->dst(g));
      if (s == npos || d == npos) continue;
      out.morphism_of[f * mb + g] =
          builder.add_morphism("(" + a->morphism(f).name + "," + b->morphism(g).name + ")", s, d,
                               "(" + a->label(f) + "," + b->label(g) + ")");
      out.morphisms.emplace_back(f, g);
    }
  }
  for (std::size_t i = 0; i < out.objects.size(); ++i) {
    const auto [x, y] = out.objects[i];
    builder.set_identity(i, out.morphism(a->identity(x), b->identity(y)));
  }
  for (std::size_t k = 0; k < out.morphisms.size(); ++k) {
    const auto [f1, g1] = out.morphisms[k];
    // every composable successor (f2, g2) of (f1, g1)
    for (std::size_t x = 0; x < a->object_count(); ++x) {
      for (std::size_t f2 : a->hom(a->dst(f1), x)) {
        for (std::size_t y = 0; y < nb; ++y) {
          if (out.object(x, y) == npos) continue;
          for (std::size_t g2 : b->hom(b->dst(g1), y)) {
            const std::size_t h1 = a->compose(f2, f1);
            const std::size_t h2 = b->compose(g2, g1);
            if (h1 == npos || h2 == npos) continue;
            builder.set_composite(out.morphism(f2, g2), k, out.morphism(h1, h2));
          }
        }
      }
    }
  }
  out.cat = builder.build();
  return out;
}

}  // namespace

CatRef tensor_category(const CatRef& a, const CatRef& b) {
  return pair_category(a, b, [](std::size_t, std::size_t) { return true; }).cat;
}

CatRef unit_category() {
  CategoryBuilder b("I");
  b.add_object("0");
  return b.build();
}

CatRef discrete_category(std::size_t n, std::string name) {
  CategoryBuilder b(name.empty() ? "discrete" + std::to_string(n) : std::move(name));
  for (std::size_t i = 0; i < n; ++i) b.add_object(std::to_string(i));
  return b.build();
}

CatRef poset_category(std::string name, const std::vector<std::string>& objects,
                      const std::vector<std::pair<std::string, std::string>>& less_eq) {
  const std::size_t n = objects.size();
  CategoryBuilder b(std::move(name));
  for (const auto& o : objects) b.add_object(o);
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [x, y] : less_eq) le[b.object_index(x)][b.object_index(y)] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (le[i][k] && le[k][j]) le[i][j] = true;
      }
    }
  }
  std::vector<std::vector<std::size_t>> arrow(n, std::vector<std::size_t>(n, npos));
  for (std::size_t i = 0; i < n; ++i) arrow[i][i] = i;  // identities were added first
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && le[i][j]) arrow[i][j] = b.add_morphism("le", i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (le[i][j] && le[j][k]) b.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
      }
    }
  }
  return b.build();
}

CatRef chain_category(std::size_t n) {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    objects.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return poset_category("chain" + std::to_string(n), objects, rel);
}

CatRef diamond_category() {
  return poset_category("diamond", {"bot", "x", "y", "top"},
                        {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}});
}

CatRef grid_category(std::size_t rows, std::size_t cols) {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, std::string>> rel;
  auto name = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      objects.push_back(name(i, j));
      if (i > 0) rel.emplace_back(name(i - 1, j), name(i, j));
      if (j > 0) rel.emplace_back(name(i, j - 1), name(i, j));
    }
  }
  return poset_category("grid" + std::to_string(rows) + "x" + std::to_string(cols), objects, rel);
}

CatRef monoid_category(std::string name, const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& mult) {
  if (elements.empty()) throw Error("a monoid needs an identity element");
  CategoryBuilder b(std::move(name));
  b.add_object("*", elements[0]);
  for (std::size_t i = 1; i < elements.size(); ++i) b.add_morphism(elements[i], 0, 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      b.set_composite(i, j, mult.at(i).at(j));
    }
  }
  return b.build();
}

CatRef parallel_category(std::size_t arrows) {
  CategoryBuilder b("parallel" + std::to_string(arrows));
  b.add_object("a");
  b.add_object("b");
  for (std::size_t i = 0; i < arrows; ++i) b.add_morphism("f" + std::to_string(i), 0, 1);
  return b.build();
}

// Functors -----------------------------------------------------------------------

ValidationReport validate_functor(const CatFunctor& f) {
  ValidationReport r;
  const FinCategory& c = *f.dom;
  const FinCategory& d = *f.cod;
  if (f.obj.size() != c.object_count() || f.mor.size() != c.morphism_count()) {
    r.add("functor tables have the wrong size");
    return r;
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (f.obj[a] >= d.object_count()) r.add("object " + c.object(a) + " maps outside the codomain");
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (f.mor[m] >= d.morphism_count()) {
      r.add("morphism " + c.label(m) + " maps outside the codomain");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (d.src(f.mor[m]) != f.obj[c.src(m)] || d.dst(f.mor[m]) != f.obj[c.dst(m)]) {
      r.add("F(" + c.label(m) + ") = " + d.label(f.mor[m]) + " has the wrong endpoints");
    }
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (f.mor[c.identity(a)] != d.identity(f.obj[a])) {
      r.add("identity of " + c.object(a) + " not preserved");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t fm = 0; fm < c.morphism_count(); ++fm) {
    for (std::size_t x = 0; x < c.object_count(); ++x) {
      for (std::size_t g : c.hom(c.dst(fm), x)) {
        std::size_t gf = c.compose(g, fm);
        if (f.mor[gf] != d.compose(f.mor[g], f.mor[fm])) {
          r.add("composite " + c.label(g) + " . " + c.label(fm) + " not preserved");
        }
      }
    }
  }
  return r;
}

CatFunctor identity_functor(const CatRef& c) {
  CatFunctor f{c, c, {}, {}};
  for (std::size_t a = 0; a < c->object_count(); ++a) f.obj.push_back(a);
  for (std::size_t m = 0; m < c->morphism_count(); ++m) f.mor.push_back(m);
  return f;
}

CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
  if (!same_category(f.cod, g.dom)) throw Error("cannot compose functors: categories differ");
  CatFunctor out{f.dom, g.cod, {}, {}};
  for (std::size_t a : f.obj) out.obj.push_back(g.obj[a]);
  for (std::size_t m : f.mor) out.mor.push_back(g.mor[m]);
  return out;
}

CatFunctor thin_functor(const CatRef& dom, const CatRef& cod, const std::vector<std::size_t>& obj) {
  CatFunctor f{dom, cod, obj, {}};
  if (obj.size() != dom->object_count()) throw Error("object map has the wrong size");
  for (std::size_t m = 0; m < dom->morphism_count(); ++m) {
    std::size_t image = cod->unique_morphism(obj[dom->src(m)], obj[dom->dst(m)]);
    if (image == npos) {
      throw Error("no unique morphism " + cod->object(obj[dom->src(m)]) + " -> " +
                  cod->object(obj[dom->dst(m)]) + " in " + cod->name() + " for " + dom->label(m));
    }
    f.mor.push_back(image);
  }
  return f;
}

CatFunctor opposite(const CatFunctor& f) { return CatFunctor{opposite(f.dom), opposite(f.cod), f.obj, f.mor}; }

CatFunctor tensor_functor(const CatFunctor& f, const CatFunctor& g, const CatRef& dom,
                          const CatRef& cod) {
  CatFunctor out{dom, cod, {}, {}};
  for (std::size_t x = 0; x < f.dom->object_count(); ++x) {
    for (std::size_t y = 0; y < g.dom->object_count(); ++y) {
      out.obj.push_back(tensor_object(*g.cod, f.obj[x], g.obj[y]));
    }
  }
  for (std::size_t m = 0; m < f.dom->morphism_count(); ++m) {
    for (std::size_t n = 0; n < g.dom->morphism_count(); ++n) {
      out.mor.push_back(tensor_morphism(*g.cod, f.mor[m], g.mor[n]));
    }
  }
  return out;
}

bool operator==(const CatFunctor& a, const CatFunctor& b) {
  return a.obj == b.obj && a.mor == b.mor && same_category(a.dom, b.dom) &&
         same_category(a.cod, b.cod);
}

ValidationReport validate_nat_trans(const NatTrans& t) {
  ValidationReport r;
  const FinCategory& c = *t.src.dom;
  const FinCategory& d = *t.src.cod;
  if (!same_category(t.src.dom, t.dst.dom) || !same_category(t.src.cod, t.dst.cod)) {
    r.add("source and target functors have different categories");
    return r;
  }
  if (t.components.size() != c.object_count()) {
    r.add("wrong number of components");
    return r;
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    std::size_t m = t.components[a];
    if (m >= d.morphism_count() || d.src(m) != t.src.obj[a] || d.dst(m) != t.dst.obj[a]) {
      r.add("component at " + c.object(a) + " is not a morphism F a -> G a");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    std::size_t lhs = d.compose(t.dst.mor[f], t.components[c.src(f)]);
    std::size_t rhs = d.compose(t.components[c.dst(f)], t.src.mor[f]);
    if (lhs != rhs) r.add("naturality square for " + c.label(f) + " does not commute");
  }
  return r;
}

}  // namespace kanext
