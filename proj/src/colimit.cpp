#include "kanext/colimit.hpp"

#include <map>

namespace kanext {

namespace {

template <bool Contravariant, class T>
ValidationReport validate_action(const T& f) {
  ValidationReport r;
  const FinCategory& c = *f.base;
  if (f.sets.size() != c.object_count() || f.maps.size() != c.morphism_count()) {
    r.add("functor data has the wrong size for " + c.name());
    return r;
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t from = Contravariant ? c.dst(m) : c.src(m);
    const std::size_t to = Contravariant ? c.src(m) : c.dst(m);
    if (!(f.maps[m].dom() == f.sets[from]) || !(f.maps[m].cod() == f.sets[to])) {
      r.add("action of " + c.label(m) + " has the wrong domain or codomain");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (!(f.maps[c.identity(a)] == FinFunction::identity(f.sets[a]))) {
      r.add("identity of " + c.object(a) + " does not act as the identity");
    }
  }
  for (std::size_t g = 0; g < c.morphism_count(); ++g) {
    for (std::size_t x = 0; x < c.object_count(); ++x) {
      for (std::size_t h : c.hom(c.dst(g), x)) {
        const std::size_t hg = c.compose(h, g);
        const FinFunction expected =
            Contravariant ? compose(f.maps[g], f.maps[h]) : compose(f.maps[h], f.maps[g]);
        if (!(f.maps[hg] == expected)) {
          r.add("action does not preserve the composite " + c.label(h) + " . " + c.label(g));
        }
      }
    }
  }
  return r;
}

template <bool Contravariant, class T>
ValidationReport validate_transformation_impl(const T& src, const T& dst,
                                              const SetTransformation& t) {
  ValidationReport r;
  const FinCategory& c = *src.base;
  if (t.components.size() != c.object_count()) {
    r.add("wrong number of components");
    return r;
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (!(t.components[a].dom() == src.sets[a]) || !(t.components[a].cod() == dst.sets[a])) {
      r.add("component at " + c.object(a) + " has the wrong type");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t from = Contravariant ? c.dst(m) : c.src(m);
    const std::size_t to = Contravariant ? c.src(m) : c.dst(m);
    if (!(compose(dst.maps[m], t.components[from]) == compose(t.components[to], src.maps[m]))) {
      r.add("naturality fails at " + c.label(m));
    }
  }
  return r;
}

}  // namespace

ValidationReport validate_set_functor(const SetFunctor& f) { return validate_action<false>(f); }
ValidationReport validate_weight(const Weight& w) { return validate_action<true>(w); }

ValidationReport validate_transformation(const SetFunctor& src, const SetFunctor& dst,
                                         const SetTransformation& t) {
  return validate_transformation_impl<false>(src, dst, t);
}

ValidationReport validate_transformation(const Weight& src, const Weight& dst,
                                         const SetTransformation& t) {
  return validate_transformation_impl<true>(src, dst, t);
}

Weight as_weight(const SetFunctor& f, const CatRef& base) {
  if (f.base->object_count() != base->object_count() ||
      f.base->morphism_count() != base->morphism_count()) {
    throw Error("functor is not defined on the opposite of " + base->name());
  }
  return Weight{base, f.sets, f.maps};
}

SetFunctor as_functor_on_opposite(const Weight& w) {
  return SetFunctor{opposite(w.base), w.sets, w.maps};
}

SetFunctor constant_functor(const CatRef& base, const FinSet& value) {
  SetFunctor f{base, std::vector<FinSet>(base->object_count(), value), {}};
  f.maps.assign(base->morphism_count(), FinFunction::identity(value));
  return f;
}

Weight constant_weight(const CatRef& base, const FinSet& value) {
  const SetFunctor f = constant_functor(base, value);
  return Weight{base, f.sets, f.maps};
}

Weight hom_weight(const CatRef& c, std::size_t a0) {
  Weight w{c, {}, {}};
  for (std::size_t a = 0; a < c->object_count(); ++a) w.sets.push_back(c->hom_set(a, a0));
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    const auto& from = c->hom(c->dst(m), a0);
    std::vector<std::size_t> table;
    table.reserve(from.size());
    for (std::size_t k : from) table.push_back(c->hom_position(c->compose(k, m)));
    w.maps.emplace_back(w.sets[c->dst(m)], w.sets[c->src(m)], std::move(table));
  }
  return w;
}

SetFunctor hom_functor(const CatRef& c, std::size_t a0) {
  SetFunctor f{c, {}, {}};
  for (std::size_t a = 0; a < c->object_count(); ++a) f.sets.push_back(c->hom_set(a0, a));
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    const auto& from = c->hom(a0, c->src(m));
    std::vector<std::size_t> table;
    table.reserve(from.size());
    for (std::size_t k : from) table.push_back(c->hom_position(c->compose(m, k)));
    f.maps.emplace_back(f.sets[c->src(m)], f.sets[c->dst(m)], std::move(table));
  }
  return f;
}

SetFunctor precompose(const SetFunctor& g, const CatFunctor& j) {
  if (!same_category(g.base, j.cod)) throw Error("precompose: functor lives on another category");
  SetFunctor out{j.dom, {}, {}};
  for (std::size_t a : j.obj) out.sets.push_back(g.sets[a]);
  for (std::size_t m : j.mor) out.maps.push_back(g.maps[m]);
  return out;
}

Weight precompose(const Weight& w, const CatFunctor& j) {
  if (!same_category(w.base, j.cod)) throw Error("precompose: weight lives on another category");
  Weight out{j.dom, {}, {}};
  for (std::size_t a : j.obj) out.sets.push_back(w.sets[a]);
  for (std::size_t m : j.mor) out.maps.push_back(w.maps[m]);
  return out;
}

namespace {

template <bool Contravariant, class T>
T external_product_impl(const T& f, const T& g, const PairCategory& pc) {
  if (!same_category(pc.left, f.base) || !same_category(pc.right, g.base)) {
    throw Error("external product: pair category does not match the factors");
  }
  T out{pc.cat, {}, {}};
  std::vector<Product> prods;
  for (const auto& [x, y] : pc.objects) {
    prods.push_back(product(f.sets[x], g.sets[y]));
    out.sets.push_back(prods.back().set);
  }
  const FinCategory& c = *pc.cat;
  for (std::size_t k = 0; k < pc.morphisms.size(); ++k) {
    const auto [m, n] = pc.morphisms[k];
    const std::size_t from = Contravariant ? c.dst(k) : c.src(k);
    const std::size_t to = Contravariant ? c.src(k) : c.dst(k);
    out.maps.push_back(product_map(prods[from], prods[to], f.maps[m], g.maps[n]));
  }
  return out;
}

template <bool Contravariant, class T>
T external_product_impl(const T& f, const T& g, const CatRef& base) {
  const FinCategory& a = *f.base;
  const FinCategory& b = *g.base;
  if (base->object_count() != a.object_count() * b.object_count() ||
      base->morphism_count() != a.morphism_count() * b.morphism_count()) {
    throw Error("external product: base is not the tensor of the two categories");
  }
  PairCategory pc = pair_category(f.base, g.base, [](std::size_t, std::size_t) { return true; });
  pc.cat = base;
  return external_product_impl<Contravariant>(f, g, pc);
}

template <bool Contravariant, class T>
T pointwise_product_impl(const T& m, const T& n) {
  if (!same_category(m.base, n.base)) throw Error("pointwise product over different categories");
  const FinCategory& c = *m.base;
  T out{m.base, {}, {}};
  std::vector<Product> prods;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    prods.push_back(product(m.sets[a], n.sets[a]));
    out.sets.push_back(prods.back().set);
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    const std::size_t from = Contravariant ? c.dst(f) : c.src(f);
    const std::size_t to = Contravariant ? c.src(f) : c.dst(f);
    out.maps.push_back(product_map(prods[from], prods[to], m.maps[f], n.maps[f]));
  }
  return out;
}

}  // namespace

SetFunctor external_product(const SetFunctor& f, const SetFunctor& g, const CatRef& base) {
  return external_product_impl<false>(f, g, base);
}
Weight external_product(const Weight& f, const Weight& g, const CatRef& base) {
  return external_product_impl<true>(f, g, base);
}
SetFunctor external_product(const SetFunctor& f, const SetFunctor& g, const PairCategory& pc) {
  return external_product_impl<false>(f, g, pc);
}
Weight external_product(const Weight& f, const Weight& g, const PairCategory& pc) {
  return external_product_impl<true>(f, g, pc);
}
SetFunctor pointwise_product(const SetFunctor& m, const SetFunctor& n) {
  return pointwise_product_impl<false>(m, n);
}
Weight pointwise_product(const Weight& m, const Weight& n) {
  return pointwise_product_impl<true>(m, n);
}

// Weighted colimits -----------------------------------------------------------------

ColimitObject weighted_colimit(const Weight& w, const SetFunctor& f) {
  return weighted_colimit(std::make_shared<const Weight>(w), std::make_shared<const SetFunctor>(f));
}

ColimitObject weighted_colimit(std::shared_ptr<const Weight> wp,
                               std::shared_ptr<const SetFunctor> fp) {
  const Weight& w = *wp;
  const SetFunctor& f = *fp;
  if (!same_category(w.base, f.base)) {
    throw Error("weighted_colimit: weight over " + w.base->name() + " but functor over " +
                f.base->name());
  }
  const FinCategory& c = *f.base;
  ColimitObject out{std::move(wp), std::move(fp), {}, {}, {}};
  out.parts.reserve(c.object_count());
  std::vector<std::size_t> offsets;
  offsets.reserve(c.object_count() + 1);
  std::size_t total = 0;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    out.parts.push_back(product(w.sets[a], f.sets[a]));
    offsets.push_back(total);
    total += out.parts.back().set.size();
  }
  UnionFind uf(total);
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const std::size_t a = c.src(m);
    const std::size_t b = c.dst(m);
    const FinFunction& wm = w.maps[m];  // W b → W a
    const FinFunction& fm = f.maps[m];  // F a → F b
    for (std::size_t wb = 0; wb < w.sets[b].size(); ++wb) {
      for (std::size_t x = 0; x < f.sets[a].size(); ++x) {
        uf.unite(offsets[a] + out.parts[a].pair(wm(wb), x),
                 offsets[b] + out.parts[b].pair(wb, fm(x)));
      }
    }
  }
  // classes ordered by least member, labeled "[k#(w,x)]"
  std::vector<std::size_t> class_of_root(total, npos);
  std::vector<std::pair<std::size_t, std::size_t>> roots;  // (object, element of the part)
  std::vector<std::vector<std::size_t>> tables(c.object_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    const std::size_t n = out.parts[a].set.size();
    tables[a].resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t r = uf.find(offsets[a] + p);
      if (class_of_root[r] == npos) {
        class_of_root[r] = roots.size();
        roots.emplace_back(a, p);
      }
      tables[a][p] = class_of_root[r];
    }
  }
  std::vector<FinSet> part_sets;
  part_sets.reserve(out.parts.size());
  for (const auto& part : out.parts) part_sets.push_back(part.set);
  const std::size_t classes = roots.size();
  out.carrier = FinSet::generated(
      classes, [part_sets = std::move(part_sets), roots = std::move(roots)](std::size_t i) {
        const auto [a, p] = roots[i];
        return "[" + std::to_string(a) + "#" + part_sets[a].label(p) + "]";
      });
  out.coprojections.reserve(c.object_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    out.coprojections.emplace_back(out.parts[a].set, out.carrier, std::move(tables[a]));
  }
  return out;
}

std::optional<std::string> cocone_violation(const ColimitObject& c, const FinSet& target,
                                            const CoconeFn& cocone) {
  const FinCategory& cat = *c.functor().base;
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    for (std::size_t w = 0; w < c.weight().sets[a].size(); ++w) {
      for (std::size_t x = 0; x < c.functor().sets[a].size(); ++x) {
        if (cocone(a, w, x) >= target.size()) {
          return "cocone value at " + cat.object(a) + " lies outside the target";
        }
      }
    }
  }
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    if (cat.is_identity(m)) continue;
    const std::size_t a = cat.src(m);
    const std::size_t b = cat.dst(m);
    for (std::size_t wb = 0; wb < c.weight().sets[b].size(); ++wb) {
      for (std::size_t x = 0; x < c.functor().sets[a].size(); ++x) {
        if (cocone(a, c.weight().maps[m](wb), x) != cocone(b, wb, c.functor().maps[m](x))) {
          return "cocone breaks the identification along " + cat.label(m) + " at (" +
                 c.weight().sets[b].label(wb) + ", " + c.functor().sets[a].label(x) + ")";
        }
      }
    }
  }
  return std::nullopt;
}

FinFunction colimit_factorize(const ColimitObject& c, const FinSet& target,
                              const CoconeFn& cocone) {
  // Constancy on the classes is equivalent to the cocone condition, since the
  // classes are generated by the identifications.
  std::vector<std::size_t> table(c.carrier.size(), npos);
  const FinCategory& cat = *c.functor().base;
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    for (std::size_t w = 0; w < c.weight().sets[a].size(); ++w) {
      for (std::size_t x = 0; x < c.functor().sets[a].size(); ++x) {
        const std::size_t k = c.coproject(a, w, x);
        const std::size_t v = cocone(a, w, x);
        if (v < target.size() && (table[k] == npos || table[k] == v)) {
          table[k] = v;
          continue;
        }
        if (auto bad = cocone_violation(c, target, cocone)) {
          throw Error("colimit_factorize: " + *bad);
        }
        throw Error("colimit_factorize: inconsistent cocone on class " + c.carrier.label(k));
      }
    }
  }
  return FinFunction(c.carrier, target, std::move(table));
}

FinFunction colimit_factorize(const ColimitObject& c, const std::vector<FinFunction>& cocone) {
  if (cocone.size() != c.parts.size()) throw Error("cocone has the wrong number of legs");
  if (cocone.empty()) return FinFunction(c.carrier, FinSet(), {});
  const FinSet target = cocone.front().cod();
  for (std::size_t a = 0; a < cocone.size(); ++a) {
    if (!(cocone[a].dom() == c.parts[a].set) || !(cocone[a].cod() == target)) {
      throw Error("cocone leg " + std::to_string(a) + " has the wrong type");
    }
  }
  return colimit_factorize(c, target, [&](std::size_t a, std::size_t w, std::size_t x) {
    return cocone[a](c.parts[a].pair(w, x));
  });
}

IsoWitness iso_from_map(FinFunction map) {
  IsoWitness out;
  InverseResult inv = find_inverse(map);
  out.ok = inv.bijective();
  out.detail = inv.describe(map);
  out.backward = std::move(inv.inverse);
  out.forward = std::move(map);
  return out;
}

// Fubini -------------------------------------------------------------------------------

FubiniResult fubini_check(const Weight& w1, const Weight& w2, const SetFunctor& f) {
  const CatRef& a1 = w1.base;
  const CatRef& a2 = w2.base;
  if (f.base->object_count() != a1->object_count() * a2->object_count() ||
      f.base->morphism_count() != a1->morphism_count() * a2->morphism_count()) {
    throw Error("fubini_check: F must live on the tensor of the weights' categories");
  }
  const FinCategory& c1 = *a1;
  const FinCategory& c2 = *a2;

  std::vector<ColimitObject> inner;
  for (std::size_t a = 0; a < c1.object_count(); ++a) {
    SetFunctor slice{a2, {}, {}};
    for (std::size_t b = 0; b < c2.object_count(); ++b) {
      slice.sets.push_back(f.sets[tensor_object(c2, a, b)]);
    }
    for (std::size_t g = 0; g < c2.morphism_count(); ++g) {
      slice.maps.push_back(f.maps[tensor_morphism(c2, c1.identity(a), g)]);
    }
    inner.push_back(weighted_colimit(w2, slice));
  }
  SetFunctor outer_functor{a1, {}, {}};
  for (const auto& c : inner) outer_functor.sets.push_back(c.carrier);
  for (std::size_t m = 0; m < c1.morphism_count(); ++m) {
    const ColimitObject& from = inner[c1.src(m)];
    const ColimitObject& to = inner[c1.dst(m)];
    outer_functor.maps.push_back(
        colimit_factorize(from, to.carrier, [&](std::size_t b, std::size_t w, std::size_t x) {
          return to.coproject(b, w, f.maps[tensor_morphism(c2, m, c2.identity(b))](x));
        }));
  }

  FubiniResult out{weighted_colimit(w1, outer_functor),
                   weighted_colimit(external_product(w1, w2, f.base), f), {}};
  const ColimitObject& joint = out.joint;

  // (a, w1, [b, w2, x]) ↦ [(a,b), (w1,w2), x]
  std::map<std::pair<std::size_t, std::size_t>, FinFunction> slices;
  auto slice_map = [&](std::size_t a, std::size_t w) -> const FinFunction& {
    auto it = slices.find({a, w});
    if (it == slices.end()) {
      FinFunction h = colimit_factorize(
          inner[a], joint.carrier, [&](std::size_t b, std::size_t v, std::size_t x) {
            const std::size_t ab = tensor_object(c2, a, b);
            return joint.coproject(ab, w * w2.sets[b].size() + v, x);
          });
      it = slices.emplace(std::make_pair(a, w), std::move(h)).first;
    }
    return it->second;
  };
  out.iso = iso_from_map(colimit_factorize(
      out.iterated, joint.carrier,
      [&](std::size_t a, std::size_t w, std::size_t c) { return slice_map(a, w)(c); }));
  return out;
}

// Adjunctions ---------------------------------------------------------------------------

ValidationReport validate_adjunction(const Adjunction& adj) {
  ValidationReport r;
  const CatFunctor& s = adj.left;
  const CatFunctor& t = adj.right;
  if (!same_category(s.dom, t.cod) || !same_category(s.cod, t.dom)) {
    r.add("S : C -> A and T : A -> C required");
    return r;
  }
  const FinCategory& c = *s.dom;
  const FinCategory& a = *s.cod;
  const CatFunctor ts = compose(t, s);
  const CatFunctor st = compose(s, t);
  r.merge(validate_nat_trans(NatTrans{identity_functor(s.dom), ts, adj.unit}), "unit: ");
  r.merge(validate_nat_trans(NatTrans{st, identity_functor(s.cod), adj.counit}), "counit: ");
  if (!r.ok()) return r;
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    if (a.compose(adj.counit[s.obj[x]], s.mor[adj.unit[x]]) != a.identity(s.obj[x])) {
      r.add("triangle counit_S . S unit fails at " + c.object(x));
    }
  }
  for (std::size_t y = 0; y < a.object_count(); ++y) {
    if (c.compose(t.mor[adj.counit[y]], adj.unit[t.obj[y]]) != c.identity(t.obj[y])) {
      r.add("triangle T counit . unit_T fails at " + a.object(y));
    }
  }
  return r;
}

std::optional<Adjunction> verify_adjunction(const CatFunctor& left, const CatFunctor& right,
                                            const AdjunctionSearchLimits& limits) {
  if (!same_category(left.dom, right.cod) || !same_category(left.cod, right.dom)) {
    throw Error("verify_adjunction: S : C -> A and T : A -> C required");
  }
  const FinCategory& c = *left.dom;
  const FinCategory& a = *left.cod;
  for (const FinCategory* cat : {&c, &a}) {
    if (cat->object_count() > limits.max_objects) {
      throw Error("verify_adjunction: " + cat->name() + " exceeds the object bound of " +
                  std::to_string(limits.max_objects));
    }
    for (std::size_t x = 0; x < cat->object_count(); ++x) {
      for (std::size_t y = 0; y < cat->object_count(); ++y) {
        if (cat->hom(x, y).size() > limits.max_hom) {
          throw Error("verify_adjunction: " + cat->name() + " exceeds the hom-set bound of " +
                      std::to_string(limits.max_hom));
        }
      }
    }
  }
  const CatFunctor& s = left;
  const CatFunctor& t = right;
  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > limits.max_candidates) {
      throw Error("verify_adjunction: search exceeded " + std::to_string(limits.max_candidates) +
                  " steps");
    }
  };

  std::vector<std::size_t> unit(c.object_count(), npos);
  std::vector<std::size_t> counit(a.object_count(), npos);

  // naturality of the unit restricted to assigned objects
  auto unit_ok = [&](std::size_t x) {
    for (std::size_t y = 0; y <= x; ++y) {
      for (std::size_t f : c.hom(y, x)) {
        if (c.compose(t.mor[s.mor[f]], unit[y]) != c.compose(unit[x], f)) return false;
      }
      for (std::size_t f : c.hom(x, y)) {
        if (c.compose(t.mor[s.mor[f]], unit[x]) != c.compose(unit[y], f)) return false;
      }
    }
    return true;
  };
  auto counit_ok = [&](std::size_t x) {
    for (std::size_t y = 0; y <= x; ++y) {
      for (std::size_t f : a.hom(y, x)) {
        if (a.compose(f, counit[y]) != a.compose(counit[x], s.mor[t.mor[f]])) return false;
      }
      for (std::size_t f : a.hom(x, y)) {
        if (a.compose(f, counit[x]) != a.compose(counit[y], s.mor[t.mor[f]])) return false;
      }
    }
    // triangle T ε . η_T
    if (c.compose(t.mor[counit[x]], unit[t.obj[x]]) != c.identity(t.obj[x])) return false;
    // triangle ε_S . S η, for every c-object whose image is decided
    for (std::size_t z = 0; z < c.object_count(); ++z) {
      const std::size_t sz = s.obj[z];
      if (sz > x) continue;
      if (a.compose(counit[sz], s.mor[unit[z]]) != a.identity(sz)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> search_counit = [&](std::size_t x) -> bool {
    if (x == a.object_count()) return true;
    for (std::size_t e : a.hom(s.obj[t.obj[x]], x)) {
      tick();
      counit[x] = e;
      if (counit_ok(x) && search_counit(x + 1)) return true;
    }
    counit[x] = npos;
    return false;
  };
  std::function<bool(std::size_t)> search_unit = [&](std::size_t x) -> bool {
    if (x == c.object_count()) return search_counit(0);
    for (std::size_t e : c.hom(x, t.obj[s.obj[x]])) {
      tick();
      unit[x] = e;
      if (unit_ok(x) && search_unit(x + 1)) return true;
    }
    unit[x] = npos;
    return false;
  };
  if (!search_unit(0)) return std::nullopt;
  Adjunction adj{s, t, unit, counit};
  if (!validate_adjunction(adj).ok()) {
    throw Error("verify_adjunction: internal search produced an invalid witness");
  }
  return adj;
}

FinFunction mates_counit_map(const ColimitObject& composed, const ColimitObject& reindexed,
                             const Adjunction& adj) {
  const CatFunctor& t = adj.right;
  const Weight& w = composed.weight();
  return colimit_factorize(composed, reindexed.carrier,
                           [&](std::size_t a, std::size_t wv, std::size_t y) {
                             return reindexed.coproject(t.obj[a], w.maps[adj.counit[a]](wv), y);
                           });
}

FinFunction mates_unit_map(const ColimitObject& reindexed, const ColimitObject& composed,
                           const Adjunction& adj) {
  const CatFunctor& s = adj.left;
  const SetFunctor& g = reindexed.functor();
  return colimit_factorize(reindexed, composed.carrier,
                           [&](std::size_t c, std::size_t wv, std::size_t x) {
                             return composed.coproject(s.obj[c], wv, g.maps[adj.unit[c]](x));
                           });
}

MatesResult mates_check(const Weight& w, const SetFunctor& g, const Adjunction& adj) {
  if (!same_category(w.base, adj.left.cod) || !same_category(g.base, adj.left.dom)) {
    throw Error("mates_check: W must live on A and G on C for S : C -> A");
  }
  MatesResult out{weighted_colimit(precompose(w, adj.left), g),
                  weighted_colimit(w, precompose(g, adj.right)), {}};
  out.iso = iso_from_map(mates_counit_map(out.composed_functor, out.reindexed_weight, adj));
  if (out.iso.ok) {
    const FinFunction back = mates_unit_map(out.reindexed_weight, out.composed_functor, adj);
    if (!(back == *out.iso.backward)) {
      out.iso.ok = false;
      out.iso.detail = "unit-induced map is not the inverse of the counit-induced map";
    }
  }
  return out;
}

IsoWitness coyoneda_check(const SetFunctor& f, std::size_t a0) {
  const CatRef& c = f.base;
  const ColimitObject col = weighted_colimit(hom_weight(c, a0), f);
  return iso_from_map(colimit_factorize(col, f.sets[a0],
                                        [&](std::size_t a, std::size_t m, std::size_t x) {
                                          return f.maps[c->hom(a, a0)[m]](x);
                                        }));
}

FinFunction colimit_map(const ColimitObject& from, const ColimitObject& to,
                        const SetTransformation& alpha) {
  return colimit_factorize(from, to.carrier, [&](std::size_t a, std::size_t w, std::size_t x) {
    return to.coproject(a, alpha.components[a](w), x);
  });
}

std::vector<SetTransformation> enumerate_transformations(const SetFunctor& src,
                                                         const SetFunctor& dst,
                                                         std::size_t limit) {
  if (!same_category(src.base, dst.base)) throw Error("transformations between different bases");
  const FinCategory& c = *src.base;
  const std::size_t n = c.object_count();
  std::vector<std::vector<FinFunction>> candidates(n);
  for (std::size_t a = 0; a < n; ++a) {
    candidates[a] = all_functions(src.sets[a], dst.sets[a], 1000000);
  }
  std::vector<SetTransformation> out;
  std::vector<FinFunction> chosen(n);
  std::size_t steps = 0;
  auto natural_upto = [&](std::size_t x) {
    for (std::size_t y = 0; y <= x; ++y) {
      for (std::size_t pass = 0; pass < 2; ++pass) {
        const std::size_t from = pass ? x : y;
        const std::size_t to = pass ? y : x;
        for (std::size_t f : c.hom(from, to)) {
          if (!(compose(dst.maps[f], chosen[from]) == compose(chosen[to], src.maps[f]))) {
            return false;
          }
        }
      }
    }
    return true;
  };
  std::function<void(std::size_t)> go = [&](std::size_t x) {
    if (x == n) {
      if (out.size() >= limit) {
        throw Error("enumerate_transformations: more than " + std::to_string(limit) + " results");
      }
      out.push_back(SetTransformation{chosen});
      return;
    }
    for (const auto& cand : candidates[x]) {
      if (++steps > 100 * limit + 1000000) {
        throw Error("enumerate_transformations: search guard exceeded");
      }
      chosen[x] = cand;
      if (natural_upto(x)) go(x + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace kanext
