#include "kanext/fixtures.hpp"

namespace kanext {

namespace {

/// FNV-1a, so that fixture seeds do not depend on std::hash.
std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

/// Advances `digits` in base `base`; false after the last combination.
bool next_map(std::vector<std::size_t>& digits, std::size_t base) {
  std::size_t i = digits.size();
  while (i > 0) {
    if (++digits[i - 1] < base) return true;
    digits[--i] = 0;
  }
  return false;
}

bool monotone(const FinCategory& c, const FinCategory& d, const std::vector<std::size_t>& obj) {
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    for (std::size_t y = 0; y < c.object_count(); ++y) {
      if (!c.hom(x, y).empty() && d.hom(obj[x], obj[y]).empty()) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> monotone_maps(const FinCategory& c, const FinCategory& d) {
  std::vector<std::vector<std::size_t>> out;
  if (d.object_count() == 0) return out;
  std::vector<std::size_t> obj(c.object_count(), 0);
  do {
    if (monotone(c, d, obj)) out.push_back(obj);
  } while (next_map(obj, d.object_count()));
  return out;
}

SetFunctor indicator(const CatRef& c, const std::vector<bool>& in) {
  SetFunctor f{c, {}, {}};
  for (std::size_t a = 0; a < c->object_count(); ++a) {
    f.sets.push_back(in[a] ? FinSet::singleton("*") : FinSet());
  }
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    const FinSet& s = f.sets[c->src(m)];
    f.maps.emplace_back(s, f.sets[c->dst(m)], std::vector<std::size_t>(s.size(), 0));
  }
  return f;
}

CatRef idempotent_monoid() { return monoid_category("idempotent", {"1", "e"}, {{0, 1}, {1, 1}}); }
CatRef involution_monoid() { return monoid_category("Z2", {"1", "s"}, {{0, 1}, {1, 0}}); }
CatRef span_category() {
  return poset_category("span", {"c", "a", "b"}, {{"c", "a"}, {"c", "b"}});
}

}  // namespace

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

std::vector<NamedCategory> shipped_categories() {
  std::vector<NamedCategory> out{{"I", unit_category()}, {"discrete2", discrete_category(2)}};
  for (std::size_t n = 2; n <= 6; ++n) out.push_back({"chain" + std::to_string(n), chain_category(n)});
  out.push_back({"diamond", diamond_category()});
  out.push_back({"grid2x3", grid_category(2, 3)});
  out.push_back({"span", span_category()});
  out.push_back({"parallel2", parallel_category(2)});
  out.push_back({"idempotent", idempotent_monoid()});
  out.push_back({"Z2", involution_monoid()});
  return out;
}

std::vector<NamedCategory> lattice_fixtures() {
  std::vector<NamedCategory> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back({"chain" + std::to_string(n), chain_category(n)});
  out.push_back({"diamond", diamond_category()});
  out.push_back({"grid2x3", grid_category(2, 3)});
  return out;
}

std::vector<NamedCategory> mates_posets() {
  std::vector<NamedCategory> out;
  for (std::size_t n = 2; n <= 4; ++n) out.push_back({"chain" + std::to_string(n), chain_category(n)});
  out.push_back({"diamond", diamond_category()});
  return out;
}

std::vector<SetFunctor> functor_fixtures(const CatRef& c, std::size_t max_set) {
  std::vector<SetFunctor> out;
  for (std::size_t k = 0; k <= std::min<std::size_t>(max_set, 2); ++k) {
    out.push_back(constant_functor(c, FinSet::range(k)));
  }
  for (std::size_t a = 0; a < c->object_count(); ++a) out.push_back(hom_functor(c, a));
  std::mt19937_64 rng(stable_hash("functor/" + c->name()));
  for (int i = 0; i < 2; ++i) {
    if (auto f = random_functor(c, rng, max_set)) out.push_back(std::move(*f));
  }
  return out;
}

std::vector<Weight> weight_fixtures(const CatRef& c, std::size_t max_set) {
  std::vector<Weight> out;
  for (std::size_t k = 1; k <= std::min<std::size_t>(max_set, 2); ++k) {
    out.push_back(constant_weight(c, FinSet::range(k)));
  }
  for (std::size_t a = 0; a < c->object_count(); ++a) out.push_back(hom_weight(c, a));
  std::mt19937_64 rng(stable_hash("weight/" + c->name()));
  for (int i = 0; i < 2; ++i) {
    if (auto w = random_weight(c, rng, max_set)) out.push_back(std::move(*w));
  }
  return out;
}

std::vector<SetFunctor> filter_indicators(const CartesianStructure& cart) {
  const CatRef& c = cart.base();
  const FinCategory& cat = *c;
  if (!cat.is_thin()) throw Error("filter_indicators: category is not thin");
  const std::size_t n = cat.object_count();
  std::vector<SetFunctor> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> in(n);
    for (std::size_t a = 0; a < n; ++a) in[a] = (mask >> a) & 1;
    if (!in[cart.monoidal.unit]) continue;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (in[a] && !cat.hom(a, b).empty() && !in[b]) ok = false;
        const std::size_t ab = cart.monoidal.tensor(a, b);
        if (in[a] && in[b] && ab != npos && !in[ab]) ok = false;
      }
    }
    if (ok) out.push_back(indicator(c, in));
  }
  return out;
}

std::vector<CatFunctor> meet_top_preserving_maps(const CartesianStructure& a,
                                                 const CartesianStructure& b) {
  const FinCategory& ca = *a.base();
  const FinCategory& cb = *b.base();
  std::vector<CatFunctor> out;
  for (const auto& obj : monotone_maps(ca, cb)) {
    if (obj[a.monoidal.unit] != b.monoidal.unit) continue;
    bool ok = true;
    for (std::size_t x = 0; x < ca.object_count() && ok; ++x) {
      for (std::size_t y = 0; y < ca.object_count() && ok; ++y) {
        const std::size_t xy = a.monoidal.tensor(x, y);
        ok = xy != npos && obj[xy] == b.monoidal.tensor(obj[x], obj[y]);
      }
    }
    if (ok) out.push_back(thin_functor(a.base(), b.base(), obj));
  }
  return out;
}

std::vector<Adjunction> galois_connections(const CatRef& c, const CatRef& a) {
  const FinCategory& cc = *c;
  const FinCategory& ca = *a;
  if (!cc.is_thin() || !ca.is_thin()) throw Error("galois_connections: categories must be thin");
  std::vector<Adjunction> out;
  const auto lefts = monotone_maps(cc, ca);
  const auto rights = monotone_maps(ca, cc);
  for (const auto& s : lefts) {
    for (const auto& t : rights) {
      bool ok = true;
      for (std::size_t x = 0; x < cc.object_count() && ok; ++x) {
        for (std::size_t y = 0; y < ca.object_count() && ok; ++y) {
          ok = ca.hom(s[x], y).empty() == cc.hom(x, t[y]).empty();
        }
      }
      if (!ok) continue;
      Adjunction adj{thin_functor(c, a, s), thin_functor(a, c, t), {}, {}};
      for (std::size_t x = 0; x < cc.object_count(); ++x) adj.unit.push_back(cc.unique_morphism(x, t[s[x]]));
      for (std::size_t y = 0; y < ca.object_count(); ++y) adj.counit.push_back(ca.unique_morphism(s[t[y]], y));
      out.push_back(std::move(adj));
    }
  }
  return out;
}

NonMeetPreservingFixture non_meet_preserving_fixture() {
  const CatRef d = diamond_category();
  const CatRef c3 = chain_category(3);
  NonMeetPreservingFixture out{*derive_cartesian(d).structure, *derive_cartesian(c3).structure,
                               {}, {}};
  std::vector<std::size_t> obj(4);
  obj[d->object_index("bot")] = 0;
  obj[d->object_index("x")] = 1;
  obj[d->object_index("y")] = 1;
  obj[d->object_index("top")] = 2;
  out.j = thin_functor(d, c3, obj);
  std::vector<bool> in(4, false);
  in[d->object_index("top")] = true;
  out.f = indicator(d, in);
  return out;
}

LaxModuleFixture lax_module_fixture() {
  const CatRef u = unit_category();
  LaxModuleFixture out;
  out.pi = promonoidal_from_monoidal(*derive_cartesian(u).structure);
  out.k = monoid_module(out.pi, {"e", "a"}, {{0, 1}, {1, 1}});
  out.f = constant_functor(out.pi.base, FinSet::range(2));
  return out;
}

CatRef random_category(std::mt19937_64& rng, std::size_t max_objects, std::size_t max_hom) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::size_t n = 1 + draw(rng, max_objects);
    CategoryBuilder b("random");
    for (std::size_t i = 0; i < n; ++i) b.add_object(std::to_string(i));
    std::size_t label = 0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t count = x == y ? draw(rng, max_hom) : draw(rng, max_hom + 1);
        for (std::size_t k = 0; k < count; ++k) b.add_morphism("m" + std::to_string(label++), x, y);
      }
    }
    // random composites among the non-identity morphisms
    std::vector<std::vector<std::size_t>> hom(n * n);
    std::vector<std::pair<std::size_t, std::size_t>> ends(b.morphism_count());
    bool possible = true;
    {
      const CatRef probe = b.build();
      for (std::size_t m = 0; m < probe->morphism_count(); ++m) {
        ends[m] = {probe->src(m), probe->dst(m)};
        hom[probe->src(m) * n + probe->dst(m)].push_back(m);
      }
      for (std::size_t f = 0; f < ends.size() && possible; ++f) {
        if (probe->is_identity(f)) continue;
        for (std::size_t g = 0; g < ends.size() && possible; ++g) {
          if (probe->is_identity(g) || ends[g].first != ends[f].second) continue;
          const auto& candidates = hom[ends[f].first * n + ends[g].second];
          if (candidates.empty()) {
            possible = false;
            break;
          }
          b.set_composite(g, f, candidates[draw(rng, candidates.size())]);
        }
      }
    }
    if (!possible) continue;
    CatRef c = b.build();
    if (validate_category(*c).ok()) return c;
  }
  return chain_category(2);
}

std::optional<SetFunctor> random_functor(const CatRef& c, std::mt19937_64& rng,
                                         std::size_t max_set, std::size_t tries) {
  const FinCategory& cat = *c;
  for (std::size_t attempt = 0; attempt < tries; ++attempt) {
    SetFunctor f{c, {}, {}};
    for (std::size_t a = 0; a < cat.object_count(); ++a) {
      f.sets.push_back(FinSet::range(draw(rng, max_set + 1)));
    }
    bool possible = true;
    for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
      const FinSet& s = f.sets[cat.src(m)];
      const FinSet& t = f.sets[cat.dst(m)];
      if (cat.is_identity(m)) {
        f.maps.push_back(FinFunction::identity(s));
        continue;
      }
      if (t.size() == 0 && s.size() > 0) {
        possible = false;
        break;
      }
      std::vector<std::size_t> table(s.size());
      for (std::size_t& v : table) v = draw(rng, t.size());
      f.maps.emplace_back(s, t, std::move(table));
    }
    if (possible && validate_set_functor(f).ok()) return f;
  }
  return std::nullopt;
}

std::optional<Weight> random_weight(const CatRef& c, std::mt19937_64& rng, std::size_t max_set,
                                    std::size_t tries) {
  auto f = random_functor(opposite(c), rng, max_set, tries);
  if (!f) return std::nullopt;
  return as_weight(*f, c);
}

FubiniInstance random_fubini_instance(std::mt19937_64& rng) {
  FubiniInstance out;
  const CatRef a1 = random_category(rng, 3, 2);
  const CatRef a2 = random_category(rng, 3, 2);
  auto describe = [](const CatRef& c) {
    return std::to_string(c->object_count()) + " objects/" + std::to_string(c->morphism_count()) +
           " morphisms";
  };
  auto w1 = random_weight(a1, rng, 3);
  auto w2 = random_weight(a2, rng, 3);
  out.w1 = w1 ? *w1 : constant_weight(a1, FinSet::range(1 + draw(rng, 3)));
  out.w2 = w2 ? *w2 : constant_weight(a2, FinSet::range(1 + draw(rng, 3)));
  const CatRef base = tensor_category(a1, a2);
  std::string kind = "random";
  if (auto f = random_functor(base, rng, 3, 300)) {
    out.f = std::move(*f);
  } else {
    // F pulled back along a projection, or an external product with a
    // {0,1}-valued factor, keeping every set within 3 elements
    const auto g = random_functor(a1, rng, 3);
    const auto h = random_functor(a2, rng, 1);
    const SetFunctor gg = g ? *g : constant_functor(a1, FinSet::range(2));
    const SetFunctor hh = h ? *h : constant_functor(a2, FinSet::range(1));
    out.f = external_product(gg, hh, base);
    kind = "external product";
  }
  out.description = "A1 " + describe(a1) + ", A2 " + describe(a2) + ", F " + kind;
  return out;
}

}  // namespace kanext
