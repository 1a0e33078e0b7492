#include "kanext/convolution.hpp"

#include <map>

namespace kanext {

namespace {

template <class Fn>
IsoWitness attempt(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    IsoWitness w;
    w.detail = e.what();
    return w;
  }
}

FinFunction transform_components(const FinSet& from, const FinSet& to,
                                 const std::function<std::size_t(std::size_t)>& fn) {
  std::vector<std::size_t> table(from.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = fn(x);
  return FinFunction(from, to, std::move(table));
}

/// P_A(a1, a2, −) as a covariant functor over A.
SetFunctor p_functor(const PromonoidalStructure& pa, std::size_t a1, std::size_t a2) {
  const std::size_t o = pa.pairs.object(a1, a2);
  SetFunctor out{pa.base, {}, {}};
  for (const Weight& w : pa.p.weights) out.sets.push_back(w.sets[o]);
  for (const SetTransformation& t : pa.p.action) out.maps.push_back(t.components[o]);
  return out;
}

std::string obj_triple(const FinCategory& a, const FinCategory& b, std::size_t a1,
                       std::size_t a2, std::size_t y) {
  return "(" + a.object(a1) + "," + a.object(a2) + "," + b.object(y) + ")";
}

}  // namespace

// Weight families -------------------------------------------------------------------

ValidationReport validate_weight_family(const WeightFamily& fam) {
  ValidationReport r;
  const FinCategory& p = *fam.params;
  if (fam.weights.size() != p.object_count() || fam.action.size() != p.morphism_count()) {
    r.add("weight family has the wrong shape");
    return r;
  }
  for (std::size_t x = 0; x < p.object_count(); ++x) {
    if (!same_category(fam.weights[x].base, fam.base)) {
      r.add("weight at " + p.object(x) + " lives on another category");
      continue;
    }
    r.merge(validate_weight(fam.weights[x]), "weight at " + p.object(x) + ": ");
  }
  if (!r.ok()) return r;
  for (std::size_t g = 0; g < p.morphism_count(); ++g) {
    r.merge(validate_transformation(fam.weights[p.src(g)], fam.weights[p.dst(g)], fam.action[g]),
            "action of " + p.label(g) + ": ");
  }
  if (!r.ok()) return r;
  const std::size_t nb = fam.base->object_count();
  for (std::size_t x = 0; x < p.object_count(); ++x) {
    for (std::size_t c = 0; c < nb; ++c) {
      if (!(fam.action[p.identity(x)].components[c] ==
            FinFunction::identity(fam.weights[x].sets[c]))) {
        r.add("identity of " + p.object(x) + " acts non-trivially");
        break;
      }
    }
  }
  for (std::size_t f = 0; f < p.morphism_count(); ++f) {
    for (std::size_t y = 0; y < p.object_count(); ++y) {
      for (std::size_t g : p.hom(p.dst(f), y)) {
        const std::size_t gf = p.compose(g, f);
        for (std::size_t c = 0; c < nb; ++c) {
          if (!(compose(fam.action[g].components[c], fam.action[f].components[c]) ==
                fam.action[gf].components[c])) {
            r.add("action does not respect " + p.label(g) + " after " + p.label(f));
            break;
          }
        }
      }
    }
  }
  return r;
}

FamilyColimit family_colimit(const WeightFamily& fam, const SetFunctor& f) {
  FamilyColimit out;
  out.result.base = fam.params;
  for (const Weight& w : fam.weights) {
    out.colimits.push_back(weighted_colimit(w, f));
    out.result.sets.push_back(out.colimits.back().carrier);
  }
  const FinCategory& p = *fam.params;
  for (std::size_t g = 0; g < p.morphism_count(); ++g) {
    out.result.maps.push_back(
        colimit_map(out.colimits[p.src(g)], out.colimits[p.dst(g)], fam.action[g]));
  }
  return out;
}

// Promonoidal structures -------------------------------------------------------------

ValidationReport validate_promonoidal(const PromonoidalStructure& p,
                                      const std::vector<SetFunctor>& fixtures) {
  ValidationReport r;
  if (!same_category(p.p.params, p.base) || !same_category(p.p.base, p.pairs.cat) ||
      !same_category(p.unit.base, p.base)) {
    r.add("promonoidal data lives on the wrong categories");
    return r;
  }
  r.merge(validate_weight_family(p.p), "P: ");
  r.merge(validate_set_functor(p.unit), "J: ");
  if (!r.ok() || fixtures.empty()) {
    r.notes.push_back("associativity and unit witnesses not compared (no functor fixtures)");
    return r;
  }
  const FinCategory& c = *p.base;
  auto sizes_differ = [&](const SetFunctor& x, const SetFunctor& y) {
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      if (x.sets[a].size() != y.sets[a].size()) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const SetFunctor& m = fixtures[i];
    if (sizes_differ(day_convolve(p.unit, m, p).result, m)) {
      r.add("J * M differs from M in size for fixture " + std::to_string(i));
    }
    if (sizes_differ(day_convolve(m, p.unit, p).result, m)) {
      r.add("M * J differs from M in size for fixture " + std::to_string(i));
    }
    for (std::size_t jx = 0; jx < fixtures.size(); ++jx) {
      for (std::size_t k = 0; k < fixtures.size(); ++k) {
        const SetFunctor mn = day_convolve(m, fixtures[jx], p).result;
        const SetFunctor nl = day_convolve(fixtures[jx], fixtures[k], p).result;
        if (sizes_differ(day_convolve(mn, fixtures[k], p).result,
                         day_convolve(m, nl, p).result)) {
          r.add("(M*N)*L and M*(N*L) differ in size for fixtures " + std::to_string(i) + "," +
                std::to_string(jx) + "," + std::to_string(k));
        }
      }
    }
  }
  r.notes.push_back("associativity and unit compared by objectwise cardinality on " +
                    std::to_string(fixtures.size()) + " fixture(s)");
  return r;
}

PromonoidalStructure promonoidal_from_monoidal(const CartesianStructure& cart) {
  const MonoidalStructure& m = cart.monoidal;
  if (!m.total()) throw Error("promonoidal_from_monoidal: the tensor is partial");
  const CatRef& aref = m.base;
  const FinCategory& a = *aref;
  const CatRef cref = opposite(aref);
  PromonoidalStructure out;
  out.base = cref;
  out.pairs = pair_category(cref, cref, [](std::size_t, std::size_t) { return true; });
  out.p.params = cref;
  out.p.base = out.pairs.cat;
  const FinCategory& pc = *out.pairs.cat;
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    Weight w{out.pairs.cat, {}, {}};
    for (const auto& [c1, c2] : out.pairs.objects) w.sets.push_back(a.hom_set(x, m.tensor(c1, c2)));
    for (std::size_t k = 0; k < pc.morphism_count(); ++k) {
      // (g1, g2) : (c1, c2) → (c1', c2') in C ⊗ C is g1 : c1' → c1, g2 : c2' → c2 in A
      const auto [g1, g2] = out.pairs.morphisms[k];
      const std::size_t t = m.tensor_morphism(g1, g2);
      w.maps.push_back(
          transform_components(w.sets[pc.dst(k)], w.sets[pc.src(k)], [&](std::size_t i) {
            return a.hom_position(a.compose(t, a.hom(x, a.src(t))[i]));
          }));
    }
    out.p.weights.push_back(std::move(w));
  }
  // h : x → x' in C is h : x' → x in A; P(−,−,x) ⇒ P(−,−,x') precomposes with h
  for (std::size_t h = 0; h < a.morphism_count(); ++h) {
    const std::size_t from_obj = a.dst(h), to_obj = a.src(h);
    SetTransformation t;
    for (std::size_t o = 0; o < out.pairs.objects.size(); ++o) {
      const auto [c1, c2] = out.pairs.objects[o];
      const std::size_t prod = m.tensor(c1, c2);
      t.components.push_back(transform_components(
          out.p.weights[from_obj].sets[o], out.p.weights[to_obj].sets[o], [&](std::size_t i) {
            return a.hom_position(a.compose(a.hom(from_obj, prod)[i], h));
          }));
    }
    out.p.action.push_back(std::move(t));
  }
  out.unit.base = cref;
  for (std::size_t x = 0; x < a.object_count(); ++x) out.unit.sets.push_back(a.hom_set(x, m.unit));
  for (std::size_t h = 0; h < a.morphism_count(); ++h) {
    const std::size_t from_obj = a.dst(h), to_obj = a.src(h);
    out.unit.maps.push_back(transform_components(
        out.unit.sets[from_obj], out.unit.sets[to_obj], [&](std::size_t i) {
          return a.hom_position(a.compose(a.hom(from_obj, m.unit)[i], h));
        }));
  }
  return out;
}

ConvolutionResult day_convolve(const SetFunctor& m, const SetFunctor& n,
                               const PromonoidalStructure& p) {
  if (!same_category(m.base, p.base) || !same_category(n.base, p.base)) {
    throw Error("day_convolve: functors must live on the promonoidal base");
  }
  FamilyColimit fc = family_colimit(p.p, external_product(m, n, p.pairs));
  return ConvolutionResult{std::move(fc.colimits), std::move(fc.result)};
}

SetTransformation convolution_to_pointwise(const ConvolutionResult& conv,
                                           const CartesianStructure& cart, const SetFunctor& m,
                                           const SetFunctor& n) {
  const FinCategory& a = *cart.base();
  const MonoidalStructure& mon = cart.monoidal;
  SetTransformation out;
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    const ColimitObject& c = conv.colimits[x];
    const Product target = product(m.sets[x], n.sets[x]);
    out.components.push_back(colimit_factorize(
        c, target.set, [&](std::size_t o, std::size_t w, std::size_t e) {
          const std::size_t nc = a.object_count();
          const std::size_t c1 = o / nc, c2 = o % nc;
          const std::size_t mor = a.hom(x, mon.tensor(c1, c2))[w];
          const std::size_t q1 = a.compose(cart.p1(c1, c2), mor);
          const std::size_t q2 = a.compose(cart.p2(c1, c2), mor);
          const std::size_t width = n.sets[c2].size();
          return target.pair(m.maps[q1](e / width), n.maps[q2](e % width));
        }));
  }
  return out;
}

// Modules --------------------------------------------------------------------------

Weight module_weight(const PromonoidalModule& k, std::size_t b) {
  const FinCategory& a = *k.a;
  Weight out{k.a, {}, {}};
  for (std::size_t x = 0; x < a.object_count(); ++x) out.sets.push_back(k.k.sets[k.domain.object(x, b)]);
  const std::size_t idb = k.b->identity(b);
  for (std::size_t f = 0; f < a.morphism_count(); ++f) {
    out.maps.push_back(k.k.maps[k.domain.morphism(f, idb)]);
  }
  return out;
}

SetFunctor module_functor(const PromonoidalModule& k, std::size_t x) {
  const FinCategory& b = *k.b;
  SetFunctor out{k.b, {}, {}};
  for (std::size_t y = 0; y < b.object_count(); ++y) out.sets.push_back(k.k.sets[k.domain.object(x, y)]);
  const std::size_t idx = k.a->identity(x);
  for (std::size_t g = 0; g < b.morphism_count(); ++g) {
    out.maps.push_back(k.k.maps[k.domain.morphism(idx, g)]);
  }
  return out;
}

WeightFamily module_family(const PromonoidalModule& k) {
  const FinCategory& a = *k.a;
  const FinCategory& b = *k.b;
  WeightFamily fam{k.b, k.a, {}, {}};
  for (std::size_t y = 0; y < b.object_count(); ++y) fam.weights.push_back(module_weight(k, y));
  for (std::size_t g = 0; g < b.morphism_count(); ++g) {
    SetTransformation t;
    for (std::size_t x = 0; x < a.object_count(); ++x) {
      t.components.push_back(k.k.maps[k.domain.morphism(a.identity(x), g)]);
    }
    fam.action.push_back(std::move(t));
  }
  return fam;
}

ColimitObject phi_domain(const PromonoidalModule& k, const PromonoidalStructure& pb,
                         std::size_t a1, std::size_t a2, std::size_t b) {
  return weighted_colimit(
      pb.p.weights[b],
      external_product(module_functor(k, a1), module_functor(k, a2), pb.pairs));
}

ColimitObject phi_codomain(const PromonoidalModule& k, const PromonoidalStructure& pa,
                           std::size_t a1, std::size_t a2, std::size_t b) {
  return weighted_colimit(module_weight(k, b), p_functor(pa, a1, a2));
}

ColimitObject unit_codomain(const PromonoidalModule& k, const PromonoidalStructure& pa,
                            std::size_t b) {
  return weighted_colimit(module_weight(k, b), pa.unit);
}

FamilyColimit exists_k(const PromonoidalModule& k, const SetFunctor& f) {
  if (!same_category(f.base, k.a)) throw Error("exists_k: F must live on the module's A");
  return family_colimit(module_family(k), f);
}

namespace {

/// phi_domain and phi_codomain at every (a1, a2, b), in phi_index order.
struct PhiColimits {
  std::vector<ColimitObject> dom;
  std::vector<ColimitObject> cod;
};

PhiColimits phi_colimits(const PromonoidalModule& k, const PromonoidalStructure& pa,
                         const PromonoidalStructure& pb) {
  const std::size_t na = k.a->object_count(), nb = k.b->object_count();
  std::vector<SetFunctor> rows;
  for (std::size_t x = 0; x < na; ++x) rows.push_back(module_functor(k, x));
  std::vector<std::shared_ptr<const Weight>> columns, p_weights;
  for (std::size_t y = 0; y < nb; ++y) {
    columns.push_back(std::make_shared<const Weight>(module_weight(k, y)));
    p_weights.push_back(std::make_shared<const Weight>(pb.p.weights[y]));
  }
  PhiColimits out;
  out.dom.reserve(na * na * nb);
  out.cod.reserve(na * na * nb);
  for (std::size_t a1 = 0; a1 < na; ++a1) {
    for (std::size_t a2 = 0; a2 < na; ++a2) {
      const auto kk = std::make_shared<const SetFunctor>(
          external_product(rows[a1], rows[a2], pb.pairs));
      const auto p = std::make_shared<const SetFunctor>(p_functor(pa, a1, a2));
      for (std::size_t y = 0; y < nb; ++y) {
        out.dom.push_back(weighted_colimit(p_weights[y], kk));
        out.cod.push_back(weighted_colimit(columns[y], p));
      }
    }
  }
  return out;
}

/// Dom(f1, f2) : Dom(x1', x2', b) → Dom(x1, x2, b) for f_i : x_i → x_i'.
FinFunction domain_action(const PromonoidalModule& k, const PromonoidalStructure& pb,
                          const ColimitObject& from, const ColimitObject& to, std::size_t f1,
                          std::size_t f2) {
  const FinCategory& a = *k.a;
  return colimit_factorize(from, to.carrier, [&](std::size_t o, std::size_t w, std::size_t e) {
    const auto [b1, b2] = pb.pairs.objects[o];
    const std::size_t idb1 = k.b->identity(b1), idb2 = k.b->identity(b2);
    const std::size_t from_width = k.k.sets[k.domain.object(a.dst(f2), b2)].size();
    const std::size_t to_width = k.k.sets[k.domain.object(a.src(f2), b2)].size();
    const std::size_t e1 = k.k.maps[k.domain.morphism(f1, idb1)](e / from_width);
    const std::size_t e2 = k.k.maps[k.domain.morphism(f2, idb2)](e % from_width);
    return to.coproject(o, w, e1 * to_width + e2);
  });
}

/// Cod(f1, f2) : Cod(x1', x2', b) → Cod(x1, x2, b).
FinFunction codomain_action(const PromonoidalStructure& pa, const ColimitObject& from,
                            const ColimitObject& to, std::size_t f1, std::size_t f2) {
  const std::size_t k = pa.pairs.morphism(f1, f2);
  return colimit_factorize(from, to.carrier, [&](std::size_t x, std::size_t w, std::size_t p) {
    return to.coproject(x, w, pa.p.weights[x].maps[k](p));
  });
}

bool check_square(const FinFunction& top, const FinFunction& right, const FinFunction& left,
                  const FinFunction& bottom) {
  // right ∘ top == bottom ∘ left
  return compose(right, top) == compose(bottom, left);
}

}  // namespace

ValidationReport validate_promonoidal_module(const PromonoidalModule& k,
                                             const PromonoidalStructure& pa,
                                             const PromonoidalStructure& pb,
                                             const ModuleCheckOptions& options) {
  ValidationReport r;
  if (!same_category(pa.base, k.a) || !same_category(pb.base, k.b) ||
      !same_category(k.k.base, k.domain.cat)) {
    r.add("module data lives on the wrong categories");
    return r;
  }
  r.merge(validate_set_functor(k.k), "K: ");
  if (!r.ok()) return r;
  const FinCategory& a = *k.a;
  const FinCategory& b = *k.b;
  const std::size_t na = a.object_count(), nb = b.object_count();
  if (k.phi.size() != na * na * nb || k.phi0.size() != nb) {
    r.add("phi or phi0 has the wrong number of components");
    return r;
  }
  const PhiColimits colimits = phi_colimits(k, pa, pb);
  const std::vector<ColimitObject>& dom = colimits.dom;
  const std::vector<ColimitObject>& cod = colimits.cod;
  std::vector<ColimitObject> ucod;
  for (std::size_t a1 = 0; a1 < na; ++a1) {
    for (std::size_t a2 = 0; a2 < na; ++a2) {
      for (std::size_t y = 0; y < nb; ++y) {
        const std::size_t i = k.phi_index(a1, a2, y);
        const FinFunction& phi = k.phi[i];
        if (!(phi.dom() == dom[i].carrier) || !(phi.cod() == cod[i].carrier)) {
          r.add("phi" + obj_triple(a, b, a1, a2, y) + " is not a map between the computed colimits");
        }
      }
    }
  }
  for (std::size_t y = 0; y < nb; ++y) {
    ucod.push_back(unit_codomain(k, pa, y));
    if (!(k.phi0[y].dom() == pb.unit.sets[y]) || !(k.phi0[y].cod() == ucod.back().carrier)) {
      r.add("phi0 at " + b.object(y) + " is not a map J(B) -> colim_A(K(A,B), J A)");
    }
  }
  if (!r.ok()) return r;

  if (options.naturality) {
    for (std::size_t f = 0; f < a.morphism_count(); ++f) {
      const std::size_t x = a.src(f), x2 = a.dst(f);
      for (std::size_t other = 0; other < na; ++other) {
        const std::size_t ido = a.identity(other);
        for (std::size_t y = 0; y < nb; ++y) {
          // first variable
          {
            const std::size_t s = k.phi_index(x2, other, y), t = k.phi_index(x, other, y);
            if (!check_square(domain_action(k, pb, dom[s], dom[t], f, ido), k.phi[t], k.phi[s],
                              codomain_action(pa, cod[s], cod[t], f, ido))) {
              r.add("phi is not natural in A1 along " + a.label(f) + " at " +
                    obj_triple(a, b, x, other, y));
            }
          }
          // second variable
          {
            const std::size_t s = k.phi_index(other, x2, y), t = k.phi_index(other, x, y);
            if (!check_square(domain_action(k, pb, dom[s], dom[t], ido, f), k.phi[t], k.phi[s],
                              codomain_action(pa, cod[s], cod[t], ido, f))) {
              r.add("phi is not natural in A2 along " + a.label(f) + " at " +
                    obj_triple(a, b, other, x, y));
            }
          }
        }
      }
    }
    for (std::size_t g = 0; g < b.morphism_count(); ++g) {
      const std::size_t y = b.src(g), y2 = b.dst(g);
      for (std::size_t a1 = 0; a1 < na; ++a1) {
        for (std::size_t a2 = 0; a2 < na; ++a2) {
          const std::size_t s = k.phi_index(a1, a2, y), t = k.phi_index(a1, a2, y2);
          const FinFunction dmap = colimit_map(dom[s], dom[t], pb.p.action[g]);
          const FinFunction cmap = colimit_factorize(
              cod[s], cod[t].carrier, [&](std::size_t x, std::size_t w, std::size_t p) {
                return cod[t].coproject(x, k.k.maps[k.domain.morphism(a.identity(x), g)](w), p);
              });
          if (!check_square(dmap, k.phi[t], k.phi[s], cmap)) {
            r.add("phi is not natural in B along " + b.label(g) + " at " +
                  obj_triple(a, b, a1, a2, y));
          }
        }
      }
      const FinFunction umap = colimit_factorize(
          ucod[y], ucod[y2].carrier, [&](std::size_t x, std::size_t w, std::size_t p) {
            return ucod[y2].coproject(x, k.k.maps[k.domain.morphism(a.identity(x), g)](w), p);
          });
      if (!check_square(pb.unit.maps[g], k.phi0[y2], k.phi0[y], umap)) {
        r.add("phi0 is not natural along " + b.label(g));
      }
    }
  } else {
    r.notes.push_back("naturality of phi and phi0 skipped");
  }

  if (k.strong) {
    for (std::size_t a1 = 0; a1 < na; ++a1) {
      for (std::size_t a2 = 0; a2 < na; ++a2) {
        for (std::size_t y = 0; y < nb; ++y) {
          const FinFunction& phi = k.phi[k.phi_index(a1, a2, y)];
          const InverseResult inv = find_inverse(phi);
          if (!inv.bijective()) {
            r.add("phi" + obj_triple(a, b, a1, a2, y) + " is " + inv.describe(phi));
          }
        }
      }
    }
    for (std::size_t y = 0; y < nb; ++y) {
      const InverseResult inv = find_inverse(k.phi0[y]);
      if (!inv.bijective()) r.add("phi0 at " + b.object(y) + " is " + inv.describe(k.phi0[y]));
    }
  }
  r.notes.push_back(
      "compatibility of phi, phi0 with the associativity and unit witnesses is not checked");
  return r;
}

// Builders -----------------------------------------------------------------------------

namespace {

bool all_bijective(const PromonoidalModule& k) {
  for (const auto& f : k.phi) {
    if (!find_inverse(f).bijective()) return false;
  }
  for (const auto& f : k.phi0) {
    if (!find_inverse(f).bijective()) return false;
  }
  return true;
}

/// Fills phi and phi0 from pointwise formulas on representatives.
/// phi_rep(a1, a2, b, codomain, o, w, e) returns a class of the codomain.
template <class PhiFn, class Phi0Fn>
void fill_constraints(PromonoidalModule& k, const PromonoidalStructure& pa,
                      const PromonoidalStructure& pb, PhiFn&& phi_rep, Phi0Fn&& phi0_rep) {
  const std::size_t na = k.a->object_count(), nb = k.b->object_count();
  k.phi.clear();
  k.phi0.clear();
  const PhiColimits colimits = phi_colimits(k, pa, pb);
  for (std::size_t a1 = 0; a1 < na; ++a1) {
    for (std::size_t a2 = 0; a2 < na; ++a2) {
      for (std::size_t y = 0; y < nb; ++y) {
        const ColimitObject& d = colimits.dom[k.phi_index(a1, a2, y)];
        const ColimitObject& c = colimits.cod[k.phi_index(a1, a2, y)];
        k.phi.push_back(colimit_factorize(d, c.carrier,
                                          [&](std::size_t o, std::size_t w, std::size_t e) {
                                            return phi_rep(a1, a2, y, c, o, w, e);
                                          }));
      }
    }
  }
  for (std::size_t y = 0; y < nb; ++y) {
    const ColimitObject u = unit_codomain(k, pa, y);
    k.phi0.push_back(transform_components(pb.unit.sets[y], u.carrier,
                                          [&](std::size_t t) { return phi0_rep(y, u, t); }));
  }
  k.strong = all_bijective(k);
}

}  // namespace

PromonoidalModule identity_module(const PromonoidalStructure& pa) {
  const CatRef& aref = pa.base;
  const FinCategory& a = *aref;
  PromonoidalModule k;
  k.a = aref;
  k.b = aref;
  k.domain = pair_category(opposite(aref), aref, [](std::size_t, std::size_t) { return true; });
  k.k.base = k.domain.cat;
  for (const auto& [x, y] : k.domain.objects) k.k.sets.push_back(a.hom_set(x, y));
  const FinCategory& dc = *k.domain.cat;
  for (std::size_t m = 0; m < dc.morphism_count(); ++m) {
    // (f, g) with f : x' → x in A and g : y → y'; m ↦ g ∘ m ∘ f
    const auto [f, g] = k.domain.morphisms[m];
    const auto [x, y] = k.domain.objects[dc.src(m)];
    k.k.maps.push_back(transform_components(
        k.k.sets[dc.src(m)], k.k.sets[dc.dst(m)], [&](std::size_t i) {
          return a.hom_position(a.compose(g, a.compose(a.hom(x, y)[i], f)));
        }));
  }
  fill_constraints(
      k, pa, pa,
      [&](std::size_t a1, std::size_t a2, std::size_t y, const ColimitObject& c, std::size_t o,
          std::size_t w, std::size_t e) {
        // ((b1, b2), p, (k1, k2)) ↦ [y, id_y, P(k1, k2)(p)]
        const auto [b1, b2] = pa.pairs.objects[o];
        const std::size_t width = a.hom(a2, b2).size();
        const std::size_t k1 = a.hom(a1, b1)[e / width], k2 = a.hom(a2, b2)[e % width];
        const std::size_t p = pa.p.weights[y].maps[pa.pairs.morphism(k1, k2)](w);
        return c.coproject(y, a.hom_position(a.identity(y)), p);
      },
      [&](std::size_t y, const ColimitObject& u, std::size_t t) {
        return u.coproject(y, a.hom_position(a.identity(y)), t);
      });
  return k;
}


PromonoidalModule corollary1_module(const MonoidalFunctorData& j, const CartesianStructure& cart_a,
                                    const CartesianStructure& cart_b,
                                    const PromonoidalStructure& pa,
                                    const PromonoidalStructure& pb) {
  if (j.direction != ConstraintDirection::Monoidal) {
    throw Error("corollary1_module: J needs constraints J a1 * J a2 -> J(a1 * a2)");
  }
  const FinCategory& a = *cart_a.base();
  const FinCategory& b = *cart_b.base();
  const MonoidalStructure& ma = cart_a.monoidal;
  const MonoidalStructure& mb = cart_b.monoidal;
  const CatFunctor& jf = j.functor;
  PromonoidalModule k;
  k.a = pa.base;
  k.b = pb.base;
  k.domain = pair_category(opposite(pa.base), pb.base, [](std::size_t, std::size_t) { return true; });
  k.k.base = k.domain.cat;
  for (const auto& [x, y] : k.domain.objects) k.k.sets.push_back(b.hom_set(y, jf.on_object(x)));
  const FinCategory& dc = *k.domain.cat;
  for (std::size_t m = 0; m < dc.morphism_count(); ++m) {
    // f : x → x' in A and g : y' → y in B; m ↦ J f ∘ m ∘ g
    const auto [f, g] = k.domain.morphisms[m];
    const auto [x, y] = k.domain.objects[dc.src(m)];
    const std::size_t jfm = jf.on_morphism(f);
    k.k.maps.push_back(transform_components(
        k.k.sets[dc.src(m)], k.k.sets[dc.dst(m)], [&](std::size_t i) {
          return b.hom_position(b.compose(jfm, b.compose(b.hom(y, jf.on_object(x))[i], g)));
        }));
  }
  const std::size_t na = a.object_count();
  fill_constraints(
      k, pa, pb,
      [&](std::size_t a1, std::size_t a2, std::size_t y, const ColimitObject& c, std::size_t o,
          std::size_t w, std::size_t e) {
        // ((b1, b2), w, (k1, k2)) ↦ [a1⋆a2, Φ ∘ (k1 ⋆ k2) ∘ w, id]
        const auto [b1, b2] = pb.pairs.objects[o];
        const std::size_t ja1 = jf.on_object(a1), ja2 = jf.on_object(a2);
        const std::size_t width = b.hom(b2, ja2).size();
        const std::size_t k1 = b.hom(b1, ja1)[e / width], k2 = b.hom(b2, ja2)[e % width];
        const std::size_t wm = b.hom(y, mb.tensor(b1, b2))[w];
        const std::size_t prod = ma.tensor(a1, a2);
        const std::size_t value =
            b.compose(j.tensor_constraint[a1 * na + a2], b.compose(mb.tensor_morphism(k1, k2), wm));
        return c.coproject(prod, b.hom_position(value), a.hom_position(a.identity(prod)));
      },
      [&](std::size_t y, const ColimitObject& u, std::size_t t) {
        const std::size_t value = b.compose(j.unit_constraint, b.hom(y, mb.unit)[t]);
        return u.coproject(ma.unit, b.hom_position(value), a.hom_position(a.identity(ma.unit)));
      });
  return k;
}

PromonoidalModule corollary2_module(const SetMonoidalData& w, const CartesianStructure& cart_a,
                                    const PromonoidalStructure& pa,
                                    const PromonoidalStructure& pi) {
  const FinCategory& a = *cart_a.base();
  const MonoidalStructure& ma = cart_a.monoidal;
  if (pi.base->object_count() != 1) throw Error("corollary2_module: expected a one-object target");
  PromonoidalModule k;
  k.a = pa.base;
  k.b = pi.base;
  k.domain = pair_category(opposite(pa.base), pi.base, [](std::size_t, std::size_t) { return true; });
  k.k.base = k.domain.cat;
  for (const auto& [x, y] : k.domain.objects) k.k.sets.push_back(w.functor.sets[x]);
  for (const auto& [f, g] : k.domain.morphisms) k.k.maps.push_back(w.functor.maps[f]);
  const std::size_t na = a.object_count();
  fill_constraints(
      k, pa, pi,
      [&](std::size_t a1, std::size_t a2, std::size_t, const ColimitObject& c, std::size_t,
          std::size_t, std::size_t e) {
        const std::size_t prod = ma.tensor(a1, a2);
        const auto& phi = w.tensor_constraint[a1 * na + a2];
        if (!phi) throw Error("corollary2_module: W has no constraint at a defined pair");
        return c.coproject(prod, (*phi)(e), a.hom_position(a.identity(prod)));
      },
      [&](std::size_t, const ColimitObject& u, std::size_t) {
        return u.coproject(ma.unit, w.unit_constraint(0), a.hom_position(a.identity(ma.unit)));
      });
  return k;
}

PromonoidalModule monoid_module(const PromonoidalStructure& pi,
                                const std::vector<std::string>& elements,
                                const std::vector<std::vector<std::size_t>>& mult) {
  if (pi.base->object_count() != 1 || pi.base->morphism_count() != 1) {
    throw Error("monoid_module: expected the one-morphism structure");
  }
  if (elements.empty() || mult.size() != elements.size()) {
    throw Error("monoid_module: multiplication table has the wrong shape");
  }
  const FinSet carrier(elements);
  PromonoidalModule k;
  k.a = pi.base;
  k.b = pi.base;
  k.domain = pair_category(opposite(pi.base), pi.base, [](std::size_t, std::size_t) { return true; });
  k.k = SetFunctor{k.domain.cat, {carrier}, {FinFunction::identity(carrier)}};
  const std::size_t n = elements.size();
  fill_constraints(
      k, pi, pi,
      [&](std::size_t, std::size_t, std::size_t, const ColimitObject& c, std::size_t, std::size_t,
          std::size_t e) {
        if (mult[e / n].size() != n) throw Error("monoid_module: ragged multiplication table");
        return c.coproject(0, mult[e / n][e % n], 0);
      },
      [&](std::size_t, const ColimitObject& u, std::size_t t) { return u.coproject(0, 0, t); });
  return k;
}


// Checkers -------------------------------------------------------------------------

namespace {

TheoremReport named_report(std::initializer_list<const char*> links,
                           std::initializer_list<const char*> unit_links) {
  TheoremReport r;
  for (const char* name : links) r.links.push_back(LinkResult{name, false, false, 0, ""});
  for (const char* name : unit_links) r.unit_links.push_back(LinkResult{name, false, false, 0, ""});
  return r;
}

/// The weight (x1, x2) ↦ Dom(x1, x2, b) or Cod(x1, x2, b) over the pairs of A.
Weight pair_weight(const PairCategory& pairs, const std::vector<ColimitObject>& parts,
                   const std::function<FinFunction(const ColimitObject&, const ColimitObject&,
                                                   std::size_t, std::size_t)>& action) {
  Weight out{pairs.cat, {}, {}};
  for (const ColimitObject& c : parts) out.sets.push_back(c.carrier);
  const FinCategory& pc = *pairs.cat;
  for (std::size_t m = 0; m < pc.morphism_count(); ++m) {
    const auto [f1, f2] = pairs.morphisms[m];
    out.maps.push_back(action(parts[pc.dst(m)], parts[pc.src(m)], f1, f2));
  }
  return out;
}

}  // namespace

TheoremReport theorem_hit_check(const PromonoidalModule& k, const SetFunctor& f1,
                                const SetFunctor& f2, const PromonoidalStructure& pa,
                                const PromonoidalStructure& pb) {
  TheoremReport r = named_report({"unfold-exists", "fubini-interchange", "phi", "fubini-regroup",
                                  "def-convolution", "def-exists"},
                                 {"phi0"});
  if (!same_category(f1.base, pa.base) || !same_category(f2.base, pa.base)) {
    throw Error("theorem_hit_check: F1, F2 must live on the base of the source structure");
  }
  const ValidationReport pav = validate_promonoidal(pa);
  if (!pav.ok()) r.precondition_failures.push_back("P_A is not promonoidal: " + pav.summary());
  const ValidationReport pbv = validate_promonoidal(pb);
  if (!pbv.ok()) r.precondition_failures.push_back("P_B is not promonoidal: " + pbv.summary());
  const ValidationReport kv = validate_promonoidal_module(k, pa, pb);
  if (!kv.ok()) r.precondition_failures.push_back("K is not a module: " + kv.summary());
  for (const auto& n : kv.notes) r.notes.push_back("K: " + n);
  for (const SetFunctor* f : {&f1, &f2}) {
    const ValidationReport fv = validate_set_functor(*f);
    if (!fv.ok()) r.precondition_failures.push_back("F is not a functor: " + fv.summary());
  }
  if (!r.precondition_failures.empty()) return r;

  const FinCategory& a = *k.a;
  const FinCategory& b = *k.b;
  const PairCategory& pairs = pa.pairs;
  const FamilyColimit e1 = exists_k(k, f1);
  const FamilyColimit e2 = exists_k(k, f2);
  const ConvolutionResult conv_b = day_convolve(e1.result, e2.result, pb);
  const ConvolutionResult conv_a = day_convolve(f1, f2, pa);
  const FamilyColimit lhs = exists_k(k, conv_a.result);
  const SetFunctor ff = external_product(f1, f2, pairs);
  const PhiColimits phi_cols = phi_colimits(k, pa, pb);

  bool all_formed = true;
  bool all_bijective = true;
  std::vector<std::optional<FinFunction>> composites(b.object_count());
  for (std::size_t y = 0; y < b.object_count(); ++y) {
    const std::string where = b.object(y);
    const ColimitObject& l1 = conv_b.colimits[y];
    record_link(r.links[0], iso_from_map(FinFunction::identity(l1.carrier)), where);

    std::vector<ColimitObject> dom, cod;
    for (const auto& [x1, x2] : pairs.objects) {
      dom.push_back(phi_cols.dom[k.phi_index(x1, x2, y)]);
      cod.push_back(phi_cols.cod[k.phi_index(x1, x2, y)]);
    }
    const ColimitObject l3 = weighted_colimit(
        pair_weight(pairs, dom,
                    [&](const ColimitObject& from, const ColimitObject& to, std::size_t g1,
                        std::size_t g2) { return domain_action(k, pb, from, to, g1, g2); }),
        ff);
    const ColimitObject l4 = weighted_colimit(
        pair_weight(pairs, cod,
                    [&](const ColimitObject& from, const ColimitObject& to, std::size_t g1,
                        std::size_t g2) { return codomain_action(pa, from, to, g1, g2); }),
        ff);
    const ColimitObject& l5 = lhs.colimits[y];

    // colim_{x1,x2}(colim_{b1,b2}(P_B, K ⊠ K), F1 ⊠ F2) → colim_{b1,b2}(P_B, ∃F1 ⊠ ∃F2)
    const IsoWitness l31 = attempt([&] {
      return iso_from_map(colimit_factorize(
          l3, l1.carrier, [&](std::size_t o, std::size_t d, std::size_t v) {
            const auto [x1, x2] = pairs.objects[o];
            const std::size_t v2w = f2.sets[x2].size();
            const FinFunction inner = colimit_factorize(
                dom[o], l1.carrier, [&](std::size_t ob, std::size_t w, std::size_t e) {
                  const auto [b1, b2] = pb.pairs.objects[ob];
                  const std::size_t kw = k.k.sets[k.domain.object(x2, b2)].size();
                  const std::size_t c1 = e1.colimits[b1].coproject(x1, e / kw, v / v2w);
                  const std::size_t c2 = e2.colimits[b2].coproject(x2, e % kw, v % v2w);
                  return l1.coproject(ob, w, c1 * e2.result.sets[b2].size() + c2);
                });
            return inner(d);
          }));
    });
    record_link(r.links[1], l31, where);

    const IsoWitness lphi = attempt([&] {
      return iso_from_map(colimit_factorize(
          l3, l4.carrier, [&](std::size_t o, std::size_t d, std::size_t v) {
            const auto [x1, x2] = pairs.objects[o];
            return l4.coproject(o, k.phi[k.phi_index(x1, x2, y)](d), v);
          }));
    });
    IsoWitness cited = lphi;
    for (std::size_t o = 0; o < pairs.objects.size() && lphi.forward && !lphi.ok; ++o) {
      // cite the component of φ responsible
      const auto [x1, x2] = pairs.objects[o];
      const FinFunction& phi = k.phi[k.phi_index(x1, x2, y)];
      const InverseResult inv = find_inverse(phi);
      if (!inv.bijective()) {
        cited.detail = "phi" + obj_triple(a, b, x1, x2, y) + " is " + inv.describe(phi);
        break;
      }
    }
    record_link(r.links[2], cited, where);

    // colim_{x1,x2}(colim_x(K(x,b), P_A(x1,x2,x)), F1 ⊠ F2) → colim_x(K(x,b), (F1 ∗ F2)(x))
    const IsoWitness l45 = attempt([&] {
      return iso_from_map(colimit_factorize(
          l4, l5.carrier, [&](std::size_t o, std::size_t c, std::size_t v) {
            const FinFunction inner = colimit_factorize(
                cod[o], l5.carrier, [&](std::size_t x, std::size_t w, std::size_t p) {
                  return l5.coproject(x, w, conv_a.colimits[x].coproject(o, p, v));
                });
            return inner(c);
          }));
    });
    record_link(r.links[3], l45, where);
    record_link(r.links[4], iso_from_map(FinFunction::identity(l5.carrier)), where);
    record_link(r.links[5], iso_from_map(FinFunction::identity(l5.carrier)), where);

    if (l31.ok && lphi.forward && l45.ok) {
      composites[y] = compose(*l45.forward, compose(*lphi.forward, *l31.backward));
      if (!find_inverse(*composites[y]).bijective()) all_bijective = false;
    } else {
      all_formed = false;
      if (r.composite_detail.empty()) r.composite_detail = "comparison at " + where + " not formed";
    }

    record_link(r.unit_links[0], iso_from_map(k.phi0[y]), where);
    if (!find_inverse(k.phi0[y]).bijective()) all_bijective = false;
  }

  bool natural = all_formed;
  if (!all_formed) r.naturality_detail = "comparison not formed everywhere";
  for (std::size_t g = 0; g < b.morphism_count() && natural; ++g) {
    const FinFunction left = compose(lhs.result.maps[g], *composites[b.src(g)]);
    const FinFunction right = compose(*composites[b.dst(g)], conv_b.result.maps[g]);
    if (!(left == right)) {
      natural = false;
      r.naturality_detail = "comparison is not natural along " + b.label(g);
    }
  }
  r.natural = natural;
  r.well_defined = natural;
  r.composite_matches_canonical = r.well_defined;
  if (r.composite_detail.empty() && !natural) r.composite_detail = r.naturality_detail;
  r.canonical_strong = all_formed && all_bijective;
  r.canonical_detail = r.canonical_strong ? "" : "some component of the comparison is not a bijection";
  r.pairs_checked = b.object_count();
  return r;
}


namespace {

/// F's strong constraint, from `f_data` or from its canonical comparison.
std::optional<SetMonoidalData> strong_data(TheoremReport& r, const SetCanonicalConstraints& fc,
                                           const std::optional<SetMonoidalData>& f_data,
                                           const MonoidalCheckOptions& checks) {
  if (f_data) {
    const ValidationReport mv = validate_set_monoidal(*f_data, checks);
    if (!mv.ok()) {
      r.precondition_failures.push_back("F's constraint is not monoidal: " + mv.summary());
    } else if (!f_data->strong) {
      r.precondition_failures.push_back("F's constraint is only lax");
    }
    return f_data;
  }
  if (!fc.strong) r.precondition_failures.push_back("F is not strong monoidal: " + fc.detail);
  return fc.strong;
}

}  // namespace

TheoremReport corollary3_check(const SetFunctor& f, const CartesianStructure& cart,
                               const Weight& w1, const Weight& w2,
                               const std::optional<SetMonoidalData>& f_data) {
  TheoremReport r = named_report(
      {"convolution-pointwise", "mates", "F-constraint", "fubini-split", "definitional"},
      {"co-Yoneda", "phi0"});
  const CatRef& aref = cart.base();
  const FinCategory& a = *aref;
  if (!same_category(f.base, aref) || !same_category(w1.base, aref) ||
      !same_category(w2.base, aref)) {
    throw Error("corollary3_check: F, W1, W2 must live on the cartesian category");
  }
  const ValidationReport cv = validate_cartesian(cart);
  if (!cv.ok()) r.precondition_failures.push_back("A is not cartesian: " + cv.summary());
  else if (!cart.monoidal.total()) r.precondition_failures.push_back("A has a partial tensor");
  const ValidationReport fv = validate_set_functor(f);
  if (!fv.ok()) r.precondition_failures.push_back("F is not a functor: " + fv.summary());
  for (const Weight* w : {&w1, &w2}) {
    const ValidationReport wv = validate_weight(*w);
    if (!wv.ok()) r.precondition_failures.push_back("W is not a presheaf: " + wv.summary());
  }
  if (!r.precondition_failures.empty()) return r;
  const SetCanonicalConstraints fc = set_constraints_from_cartesian(f, cart);
  const std::optional<SetMonoidalData> fd = strong_data(r, fc, f_data, {});
  if (!r.precondition_failures.empty()) return r;
  r.notes.push_back("naturality in the weights is not checked");

  const MonoidalStructure& m = cart.monoidal;
  const std::size_t na = a.object_count();
  const PromonoidalStructure pa = promonoidal_from_monoidal(cart);
  const SetFunctor mm = as_functor_on_opposite(w1);
  const SetFunctor nn = as_functor_on_opposite(w2);
  const ConvolutionResult conv = day_convolve(mm, nn, pa);
  const SetTransformation tau = convolution_to_pointwise(conv, cart, mm, nn);
  const PairCategory d = m.defined_pairs();
  const Weight w12 = external_product(w1, w2, d);

  const ColimitObject line0 = weighted_colimit(as_weight(conv.result, aref), f);
  const ColimitObject line1 = weighted_colimit(pointwise_product(w1, w2), f);
  const ColimitObject line2 = weighted_colimit(w12, precompose(f, m.tensor_functor(d)));
  const ColimitObject line3 = weighted_colimit(w12, external_product(f, f, d));
  const ColimitObject c1 = weighted_colimit(w1, f);
  const ColimitObject c2 = weighted_colimit(w2, f);
  const Product line4 = product(c1.carrier, c2.carrier);

  const IsoWitness l1 = attempt([&] { return iso_from_map(colimit_map(line0, line1, tau)); });
  record_link(r.links[0], l1, "W1*W2");

  // mates along Δ ⊣ ⋆: (w1, w2) at (a1, a2) ↦ (W1 π1 w1, W2 π2 w2) at a1⋆a2
  const IsoWitness l2 = attempt([&] {
    return iso_from_map(colimit_factorize(
        line2, line1.carrier, [&](std::size_t o, std::size_t w, std::size_t y) {
          const auto [a1, a2] = d.objects[o];
          const std::size_t t = m.tensor(a1, a2);
          const std::size_t v2 = w2.sets[a2].size();
          const std::size_t u1 = w1.maps[cart.p1(a1, a2)](w / v2);
          const std::size_t u2 = w2.maps[cart.p2(a1, a2)](w % v2);
          return line1.coproject(t, u1 * w2.sets[t].size() + u2, y);
        }));
  });
  record_link(r.links[1], l2, "W1*W2");

  IsoWitness l3;
  if (fd) {
    l3 = attempt([&] {
      return iso_from_map(colimit_factorize(
          line3, line2.carrier, [&](std::size_t o, std::size_t w, std::size_t x) {
            const auto [a1, a2] = d.objects[o];
            return line2.coproject(o, w, (*fd->tensor_constraint[a1 * na + a2])(x));
          }));
    });
  }
  record_link(r.links[2], l3, "W1*W2");

  const IsoWitness l4 = attempt([&] {
    return iso_from_map(colimit_factorize(
        line3, line4.set, [&](std::size_t o, std::size_t w, std::size_t x) {
          const auto [a1, a2] = d.objects[o];
          const std::size_t v2 = w2.sets[a2].size();
          const std::size_t f2 = f.sets[a2].size();
          return line4.pair(c1.coproject(a1, w / v2, x / f2), c2.coproject(a2, w % v2, x % f2));
        }));
  });
  record_link(r.links[3], l4, "W1*W2");
  record_link(r.links[4], iso_from_map(FinFunction::identity(line4.set)), "W1*W2");

  // the canonical map colim(W1 ∗ W2, F) → colim(W1, F) × colim(W2, F)
  const FinFunction canonical = colimit_factorize(
      line0, line4.set, [&](std::size_t x, std::size_t w, std::size_t y) {
        const std::size_t t = tau.components[x](w);
        const std::size_t v2 = w2.sets[x].size();
        return line4.pair(c1.coproject(x, t / v2, y), c2.coproject(x, t % v2, y));
      });
  const InverseResult cinv = find_inverse(canonical);
  r.canonical_strong = cinv.bijective();
  if (!r.canonical_strong) r.canonical_detail = "canonical map is " + cinv.describe(canonical);
  r.pairs_checked = 1;

  const std::size_t n = m.unit;
  const IsoWitness u1 = coyoneda_check(f, n);
  record_link(r.unit_links[0], u1, "J");
  IsoWitness u2 = iso_from_map(fd->unit_constraint);
  record_link(r.unit_links[1], u2, "J");

  if (l1.ok && l2.ok && l3.ok && l4.ok) {
    const FinFunction composite =
        compose(*l4.forward, compose(*l3.backward, compose(*l2.backward, *l1.forward)));
    r.composite_matches_canonical = composite == canonical;
    if (!r.composite_matches_canonical) r.composite_detail = "composite differs from the canonical map";
    r.natural = true;
    r.well_defined = true;
  } else {
    r.composite_detail = "composite not formed";
    r.naturality_detail = "composite not formed";
  }
  return r;
}

Corollary4Report corollary4_check(const CatFunctor& j, const CartesianStructure& cart_a,
                                  const CartesianStructure& cart_b, const SetFunctor& f,
                                  const MainTheoremOptions& options) {
  Corollary4Report out;
  out.direct = main_theorem_check(j, cart_a, cart_b, f, std::nullopt, options);
  TheoremReport& nerve = out.nerve;
  nerve = named_report({"nerve-binary", "colim-binary"}, {"nerve-unit", "colim-unit"});
  nerve.precondition_failures = out.direct.precondition_failures;
  nerve.notes = out.direct.notes;

  const FinCategory& b = *cart_b.base();
  const LanResult route1 = pointwise_lan(j, f);
  WeightFamily fam{j.cod, j.dom, {}, {}};
  for (std::size_t y = 0; y < b.object_count(); ++y) fam.weights.push_back(lan_weight(j, y));
  for (std::size_t g = 0; g < b.morphism_count(); ++g) {
    SetTransformation t;
    for (std::size_t x = 0; x < j.dom->object_count(); ++x) {
      const std::size_t jx = j.on_object(x);
      t.components.push_back(transform_components(
          fam.weights[b.src(g)].sets[x], fam.weights[b.dst(g)].sets[x], [&](std::size_t i) {
            return b.hom_position(b.compose(g, b.hom(jx, b.src(g))[i]));
          }));
    }
    fam.action.push_back(std::move(t));
  }
  const FamilyColimit route2 = family_colimit(fam, f);

  // objectwise comparison route2 → route1 and its naturality
  bool agree = true;
  std::vector<FinFunction> iso;
  for (std::size_t y = 0; y < b.object_count() && agree; ++y) {
    const ColimitObject& from = route2.colimits[y];
    const ColimitObject& to = route1.colimits[y];
    const IsoWitness w = attempt([&] {
      return iso_from_map(colimit_factorize(
          from, to.carrier,
          [&](std::size_t x, std::size_t m, std::size_t v) { return to.coproject(x, m, v); }));
    });
    if (!w.ok) {
      agree = false;
      out.agreement_detail = "routes differ at " + b.object(y) + ": " + w.detail;
    } else {
      iso.push_back(*w.forward);
    }
  }
  for (std::size_t g = 0; g < b.morphism_count() && agree; ++g) {
    if (!(compose(route1.lan.maps[g], iso[b.src(g)]) ==
          compose(iso[b.dst(g)], route2.result.maps[g]))) {
      agree = false;
      out.agreement_detail = "routes are not naturally isomorphic along " + b.label(g);
    }
  }
  out.routes_agree = agree;

  if (nerve.preconditions_ok()) {
    const MonoidalStructure& mb = cart_b.monoidal;
    for (std::size_t b1 = 0; b1 < b.object_count(); ++b1) {
      for (std::size_t b2 = 0; b2 < b.object_count(); ++b2) {
        const std::size_t b12 = mb.tensor(b1, b2);
        if (b12 == npos) {
          ++nerve.pairs_skipped;
          continue;
        }
        ++nerve.pairs_checked;
        const std::string where = "(" + b.object(b1) + "," + b.object(b2) + ")";
        const Weight& n1 = fam.weights[b1];
        const Weight& n2 = fam.weights[b2];
        // B(J−, b1) × B(J−, b2) → B(J−, b1⋆b2), (m1, m2) ↦ ⟨m1, m2⟩
        IsoWitness pairing{true, std::nullopt, std::nullopt, ""};
        for (std::size_t x = 0; x < j.dom->object_count() && pairing.ok; ++x) {
          const std::size_t jx = j.on_object(x);
          const Product pr = product(n1.sets[x], n2.sets[x]);
          const IsoWitness c = iso_from_map(transform_components(
              pr.set, fam.weights[b12].sets[x], [&](std::size_t p) {
                return b.hom_position(cart_b.pairing(b.hom(jx, b1)[pr.first(p)],
                                                     b.hom(jx, b2)[pr.second(p)]));
              }));
          if (!c.ok) {
            pairing = c;
            pairing.detail = "at " + j.dom->object(x) + ": " + c.detail;
          }
        }
        record_link(nerve.links[0], pairing, where);

        const TheoremReport sub = corollary3_check(f, cart_a, n1, n2);
        IsoWitness split;
        split.ok = sub.ok();
        split.detail = sub.first_failure();
        record_link(nerve.links[1], split, where);
      }
    }
    const std::size_t nb_unit = cart_b.monoidal.unit;
    IsoWitness unit{true, std::nullopt, std::nullopt, ""};
    for (std::size_t x = 0; x < j.dom->object_count(); ++x) {
      if (fam.weights[nb_unit].sets[x].size() != 1) {
        unit.ok = false;
        unit.detail = "B(J" + j.dom->object(x) + ", N) is not a singleton";
        break;
      }
    }
    record_link(nerve.unit_links[0], unit, "N");
    const TheoremReport sub_unit = corollary3_check(f, cart_a, fam.weights[nb_unit],
                                                    fam.weights[nb_unit]);
    IsoWitness cu;
    cu.ok = sub_unit.preconditions_ok();
    for (const LinkResult& l : sub_unit.unit_links) {
      if (!l.invertible && cu.ok) {
        cu.ok = false;
        cu.detail = l.name + ": " + l.detail;
      }
    }
    if (!sub_unit.preconditions_ok()) cu.detail = sub_unit.first_failure();
    record_link(nerve.unit_links[1], cu, "N");

    // the canonical comparison of the second route, and its naturality
    const SetCanonicalConstraints rc = set_constraints_from_cartesian(route2.result, cart_b);
    nerve.canonical_strong = rc.strong.has_value();
    nerve.canonical_detail = rc.detail;
    nerve.composite_matches_canonical = nerve.canonical_strong;
    if (!nerve.canonical_strong) nerve.composite_detail = "canonical comparison: " + rc.detail;
    bool natural = true;
    for (std::size_t g1 = 0; g1 < b.morphism_count() && natural; ++g1) {
      for (std::size_t g2 = 0; g2 < b.morphism_count() && natural; ++g2) {
        const std::size_t s = b.src(g1) * b.object_count() + b.src(g2);
        const std::size_t t = b.dst(g1) * b.object_count() + b.dst(g2);
        const std::size_t g12 = mb.tensor_morphism(g1, g2);
        if (!rc.comparison[s] || !rc.comparison[t] || g12 == npos) continue;
        const Product ps = product(route2.result.sets[b.src(g1)], route2.result.sets[b.src(g2)]);
        const Product pt = product(route2.result.sets[b.dst(g1)], route2.result.sets[b.dst(g2)]);
        if (!(compose(*rc.comparison[t], route2.result.maps[g12]) ==
              compose(product_map(ps, pt, route2.result.maps[g1], route2.result.maps[g2]),
                      *rc.comparison[s]))) {
          natural = false;
          nerve.naturality_detail =
              "comparison is not natural at (" + b.label(g1) + "," + b.label(g2) + ")";
        }
      }
    }
    nerve.natural = natural;
    nerve.well_defined = natural;
  }

  auto failure_class = [](const TheoremReport& r) {
    const std::string f = r.first_failure();
    return f.substr(0, f.find_first_of(" :"));
  };
  out.verdicts_agree = out.direct.ok() == out.nerve.ok() &&
                       failure_class(out.direct) == failure_class(out.nerve);
  return out;
}

}  // namespace kanext
