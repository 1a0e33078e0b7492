#include "kanext/kan.hpp"

#include <map>

namespace kanext {

Weight lan_weight(const CatFunctor& j, std::size_t b) {
  return precompose(hom_weight(j.cod, b), j);
}

LanResult pointwise_lan(const CatFunctor& j, const SetFunctor& f) {
  if (!same_category(j.dom, f.base)) {
    throw Error("pointwise_lan: F lives on " + f.base->name() + ", J starts at " +
                j.dom->name());
  }
  const FinCategory& a = *j.dom;
  const FinCategory& b = *j.cod;
  LanResult out{j, f, {}, SetFunctor{j.cod, {}, {}}, {}};
  for (std::size_t y = 0; y < b.object_count(); ++y) {
    out.colimits.push_back(weighted_colimit(lan_weight(j, y), f));
    out.lan.sets.push_back(out.colimits.back().carrier);
  }
  for (std::size_t g = 0; g < b.morphism_count(); ++g) {
    const ColimitObject& from = out.colimits[b.src(g)];
    const ColimitObject& to = out.colimits[b.dst(g)];
    out.lan.maps.push_back(colimit_factorize(
        from, to.carrier, [&](std::size_t x, std::size_t m, std::size_t v) {
          const std::size_t k = b.compose(g, b.hom(j.obj[x], b.src(g))[m]);
          return to.coproject(x, b.hom_position(k), v);
        }));
  }
  for (std::size_t x = 0; x < a.object_count(); ++x) {
    const std::size_t jx = j.obj[x];
    const ColimitObject& c = out.colimits[jx];
    std::vector<std::size_t> table(f.sets[x].size());
    for (std::size_t v = 0; v < table.size(); ++v) {
      table[v] = c.coproject(x, b.hom_position(b.identity(jx)), v);
    }
    out.unit.emplace_back(f.sets[x], c.carrier, std::move(table));
  }
  return out;
}

UniversalReport lan_universal_check(const LanResult& lan, const SetFunctor& g,
                                    std::size_t limit) {
  UniversalReport r;
  const FinCategory& a = *lan.j.dom;
  const FinCategory& b = *lan.j.cod;
  const SetFunctor gj = precompose(g, lan.j);
  std::vector<SetTransformation> alphas, betas;
  try {
    alphas = enumerate_transformations(lan.f, gj, limit);
    betas = enumerate_transformations(lan.lan, g, limit);
  } catch (const Error& e) {
    r.detail = std::string("enumeration guard: ") + e.what();
    return r;
  }
  r.transformations_from_f = alphas.size();
  r.transformations_from_lan = betas.size();

  auto restrict = [&](const SetTransformation& beta) {
    std::vector<std::vector<std::size_t>> tables;
    for (std::size_t x = 0; x < a.object_count(); ++x) {
      tables.push_back(compose(beta.components[lan.j.obj[x]], lan.unit[x]).table());
    }
    return tables;
  };

  // existence: every α extends along η
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const SetTransformation& alpha = alphas[i];
    SetTransformation beta;
    for (std::size_t y = 0; y < b.object_count(); ++y) {
      beta.components.push_back(colimit_factorize(
          lan.colimits[y], g.sets[y], [&](std::size_t x, std::size_t m, std::size_t v) {
            return g.maps[b.hom(lan.j.obj[x], y)[m]](alpha.components[x](v));
          }));
    }
    const ValidationReport nat = validate_transformation(lan.lan, g, beta);
    if (!nat.ok()) {
      r.detail = "extension of transformation " + std::to_string(i) + " is not natural: " +
                 nat.summary();
      return r;
    }
    auto tables = restrict(beta);
    for (std::size_t x = 0; x < a.object_count(); ++x) {
      if (tables[x] != alpha.components[x].table()) {
        r.detail = "extension of transformation " + std::to_string(i) + " does not restrict back";
        return r;
      }
    }
  }
  // uniqueness: restriction along η is injective on Nat(Lan_J F, G)
  std::map<std::vector<std::vector<std::size_t>>, std::size_t> seen;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    auto [it, fresh] = seen.emplace(restrict(betas[i]), i);
    if (!fresh) {
      r.detail = "transformations " + std::to_string(it->second) + " and " + std::to_string(i) +
                 " out of Lan_J F agree on the unit";
      return r;
    }
  }
  if (alphas.size() != betas.size()) {
    r.detail = "|Nat(F, GJ)| = " + std::to_string(alphas.size()) + " but |Nat(Lan_J F, G)| = " +
               std::to_string(betas.size());
    return r;
  }
  r.ok = true;
  r.detail = std::to_string(alphas.size()) + " transformations correspond";
  return r;
}

void record_link(LinkResult& link, const IsoWitness& iso, const std::string& where) {
  const bool first = link.instances == 0;
  ++link.instances;
  link.computed = true;
  if (first) link.invertible = true;
  if (!iso.ok && link.invertible) {
    link.invertible = false;
    link.detail = where + ": " + iso.detail;
  }
}

bool TheoremReport::ok() const { return first_failure().empty(); }

std::string TheoremReport::first_failure() const {
  if (!precondition_failures.empty()) return "precondition: " + precondition_failures.front();
  for (const auto* group : {&links, &unit_links}) {
    for (const LinkResult& l : *group) {
      if (!l.computed) return "link " + l.name + ": not computed" +
                              (l.detail.empty() ? "" : " (" + l.detail + ")");
      if (!l.invertible) return "link " + l.name + ": " + l.detail;
    }
  }
  if (!composite_matches_canonical) return "composite: " + composite_detail;
  if (!natural) return "naturality: " + naturality_detail;
  return "";
}

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

std::string pair_label(const FinCategory& c, std::size_t x, std::size_t y) {
  return "(" + c.object(x) + "," + c.object(y) + ")";
}

}  // namespace

TheoremReport main_theorem_check(const CatFunctor& j, const CartesianStructure& ca,
                                 const CartesianStructure& cb, const SetFunctor& f,
                                 const std::optional<SetMonoidalData>& f_data,
                                 const MainTheoremOptions& options) {
  TheoremReport r;
  for (const char* name : {"interchange", "fubini", "F-constraint", "mates", "B-cartesian",
                           "def-K"}) {
    r.links.push_back(LinkResult{name, false, false, 0, ""});
  }
  for (const char* name : {"phi0", "co-Yoneda", "mates", "definitional", "terminal-weight"}) {
    r.unit_links.push_back(LinkResult{name, false, false, 0, ""});
  }
  const CatRef& aref = ca.base();
  const CatRef& bref = cb.base();
  const FinCategory& A = *aref;
  const FinCategory& B = *bref;
  if (!same_category(j.dom, aref) || !same_category(j.cod, bref) || !same_category(f.base, aref)) {
    throw Error("main_theorem_check: J : A -> B and F : A -> FinSet required");
  }

  // preconditions
  const ValidationReport jv = validate_functor(j);
  if (!jv.ok()) r.precondition_failures.push_back("J is not a functor: " + jv.summary());
  const ValidationReport fv = validate_set_functor(f);
  if (!fv.ok()) r.precondition_failures.push_back("F is not a functor: " + fv.summary());
  const ValidationReport av = validate_cartesian(ca, options.structure_checks);
  if (!av.ok()) r.precondition_failures.push_back("A is not cartesian: " + av.summary());
  const ValidationReport bv = validate_cartesian(cb, options.structure_checks);
  if (!bv.ok()) r.precondition_failures.push_back("B is not cartesian: " + bv.summary());
  for (const auto& n : av.notes) r.notes.push_back("A: " + n);
  for (const auto& n : bv.notes) r.notes.push_back("B: " + n);
  if (!r.precondition_failures.empty()) return r;

  std::optional<SetMonoidalData> fd = f_data;
  if (fd) {
    const ValidationReport mv = validate_set_monoidal(*fd, options.structure_checks);
    if (!mv.ok()) {
      r.precondition_failures.push_back("F's constraint is not monoidal: " + mv.summary());
    } else if (!fd->strong) {
      r.precondition_failures.push_back("F's constraint is only lax");
    }
  }
  const SetCanonicalConstraints fc = set_constraints_from_cartesian(f, ca);
  if (!fd) {
    if (fc.strong) {
      fd = fc.strong;
    } else {
      r.precondition_failures.push_back("F is not strong monoidal: " + fc.detail);
    }
  }
  if (options.require_strong_j) {
    const CanonicalConstraints jc = constraints_from_cartesian(j, ca, cb);
    if (!jc.strong) r.precondition_failures.push_back("J is not strong monoidal: " + jc.detail);
  }

  const LanResult k = pointwise_lan(j, f);
  const SetCanonicalConstraints kc = set_constraints_from_cartesian(k.lan, cb);
  const PairCategory d = ca.monoidal.defined_pairs();
  const CatFunctor tensor_a = ca.monoidal.tensor_functor(d);
  const SetFunctor f_tensor = precompose(f, tensor_a);
  const SetFunctor ff = external_product(f, f, d);
  const std::size_t na = A.object_count();
  const std::size_t nb = B.object_count();
  if (!ca.monoidal.total()) r.notes.push_back("A has a partial tensor; coends run over defined pairs");

  std::vector<Weight> weights;
  for (std::size_t y = 0; y < nb; ++y) weights.push_back(k.colimits[y].weight());

  bool composite_ok = true;
  bool canonical_ok = true;
  std::map<std::pair<std::size_t, std::size_t>, FinFunction> composites;
  std::map<std::pair<std::size_t, std::size_t>, Product> kk_products;

  for (std::size_t b1 = 0; b1 < nb; ++b1) {
    for (std::size_t b2 = 0; b2 < nb; ++b2) {
      const std::size_t b12 = cb.monoidal.tensor(b1, b2);
      if (b12 == npos) {
        ++r.pairs_skipped;
        continue;
      }
      ++r.pairs_checked;
      const std::string where = pair_label(B, b1, b2);
      const Weight& w1 = weights[b1];
      const Weight& w2 = weights[b2];
      const ColimitObject& k1 = k.colimits[b1];
      const ColimitObject& k2 = k.colimits[b2];
      const ColimitObject& k12 = k.colimits[b12];
      const Product kk = product(k1.carrier, k2.carrier);
      const std::size_t kw = k2.carrier.size();

      // interchange: colim_A(B(J−, b1), F × K b2) → K b1 × K b2
      const ColimitObject m1 =
          weighted_colimit(w1, pointwise_product(f, constant_functor(aref, k2.carrier)));
      const IsoWitness l1 = attempt([&] {
        return iso_from_map(colimit_factorize(
            m1, kk.set, [&](std::size_t x, std::size_t w, std::size_t p) {
              return kk.pair(k1.coproject(x, w, p / kw), p % kw);
            }));
      });
      record_link(r.links[0], l1, where);

      // fubini: colim over pairs of (B(J−, b1) × B(J−, b2), F ⊠ F) → the above
      const Weight w12 = external_product(w1, w2, d);
      const ColimitObject cl1 = weighted_colimit(w12, ff);
      const IsoWitness l2 = attempt([&] {
        return iso_from_map(colimit_factorize(
            cl1, m1.carrier, [&](std::size_t o, std::size_t w, std::size_t x) {
              const auto [a1, a2] = d.objects[o];
              const std::size_t v2 = w2.sets[a2].size();
              const std::size_t f2 = f.sets[a2].size();
              return m1.coproject(a1, w / v2, (x / f2) * kw + k2.coproject(a2, w % v2, x % f2));
            }));
      });
      record_link(r.links[1], l2, where);

      // F-constraint: Φ : F a1 × F a2 → F(a1⋆a2), or the canonical comparison
      // F(a1⋆a2) → F a1 × F a2 when F carries no strong constraint
      const ColimitObject cl2 = weighted_colimit(w12, f_tensor);
      IsoWitness l3;
      if (fd) {
        l3 = attempt([&] {
          return iso_from_map(colimit_factorize(
              cl1, cl2.carrier, [&](std::size_t o, std::size_t w, std::size_t x) {
                const auto [a1, a2] = d.objects[o];
                return cl2.coproject(o, w, (*fd->tensor_constraint[a1 * na + a2])(x));
              }));
        });
      } else {
        l3 = attempt([&] {
          IsoWitness back = iso_from_map(colimit_factorize(
              cl2, cl1.carrier, [&](std::size_t o, std::size_t w, std::size_t y) {
                const auto [a1, a2] = d.objects[o];
                return cl1.coproject(o, w, (*fc.comparison[a1 * na + a2])(y));
              }));
          std::swap(back.forward, back.backward);
          return back;
        });
      }
      record_link(r.links[2], l3, where);

      // mates along Δ ⊣ ⋆: counit (π1, π2)
      const ColimitObject cl3 = weighted_colimit(pointwise_product(w1, w2), f);
      const IsoWitness l4 = attempt([&] {
        return iso_from_map(colimit_factorize(
            cl2, cl3.carrier, [&](std::size_t o, std::size_t w, std::size_t y) {
              const auto [a1, a2] = d.objects[o];
              const std::size_t v2 = w2.sets[a2].size();
              const std::size_t m1m = B.hom(j.obj[a1], b1)[w / v2];
              const std::size_t m2m = B.hom(j.obj[a2], b2)[w % v2];
              const std::size_t t = ca.monoidal.tensor(a1, a2);
              const std::size_t n1 = B.compose(m1m, j.mor[ca.p1(a1, a2)]);
              const std::size_t n2 = B.compose(m2m, j.mor[ca.p2(a1, a2)]);
              return cl3.coproject(t, B.hom_position(n1) * w2.sets[t].size() + B.hom_position(n2),
                                   y);
            }));
      });
      record_link(r.links[3], l4, where);

      // cartesian structure of B: (m1, m2) ↦ ⟨m1, m2⟩
      const IsoWitness l5 = attempt([&] {
        return iso_from_map(colimit_factorize(
            cl3, k12.carrier, [&](std::size_t x, std::size_t w, std::size_t y) {
              const std::size_t v2 = w2.sets[x].size();
              const std::size_t m1m = B.hom(j.obj[x], b1)[w / v2];
              const std::size_t m2m = B.hom(j.obj[x], b2)[w % v2];
              return k12.coproject(x, B.hom_position(cb.pairing(m1m, m2m)), y);
            }));
      });
      record_link(r.links[4], l5, where);

      // definition of K at b1⋆b2
      const IsoWitness l6 = iso_from_map(FinFunction::identity(k12.carrier));
      record_link(r.links[5], l6, where);

      const auto& cmp = kc.comparison[b1 * nb + b2];
      if (!cmp || !find_inverse(*cmp).bijective()) {
        if (canonical_ok) {
          r.canonical_detail = "canonical comparison at " + where + " is " +
                               (cmp ? find_inverse(*cmp).describe(*cmp) : "missing");
        }
        canonical_ok = false;
      }

      if (l1.ok && l2.ok && l3.ok && l4.ok && l5.ok) {
        const FinFunction phi_k =
            compose(*l5.forward,
                    compose(*l4.forward,
                            compose(*l3.forward, compose(*l2.backward, *l1.backward))));
        if (!cmp || !(compose(*cmp, phi_k) == FinFunction::identity(kk.set))) {
          if (composite_ok) {
            r.composite_detail = "composite at " + where + " is not inverse to (K p1, K p2)";
          }
          composite_ok = false;
        }
        composites.emplace(std::make_pair(b1, b2), phi_k);
        kk_products.emplace(std::make_pair(b1, b2), kk);
      } else {
        if (composite_ok) r.composite_detail = "composite at " + where + " not formed";
        composite_ok = false;
      }
    }
  }
  if (r.pairs_skipped) {
    r.notes.push_back(std::to_string(r.pairs_skipped) +
                      " pair(s) of B with undefined tensor skipped");
  }

  // unit chain: 1 → F N_A → colim_I(I(−,0), F N) → colim_A(I(E−,0), F) → colim_A(1, F) → K N_B
  const std::size_t n_b = cb.monoidal.unit;
  const Adjunction en = terminal_adjunction(ca);
  const CatRef i = en.right.dom;
  IsoWitness u1;
  if (fd) {
    u1 = iso_from_map(fd->unit_constraint);
  } else {
    u1 = iso_from_map(fc.unit_comparison);
    std::swap(u1.forward, u1.backward);
  }
  record_link(r.unit_links[0], u1, "N");
  const SetFunctor fn = precompose(f, en.right);
  const IsoWitness u2 = coyoneda_check(fn, 0);
  record_link(r.unit_links[1], u2, "N");
  const MatesResult mr = mates_check(hom_weight(i, 0), f, en);
  record_link(r.unit_links[2], mr.iso, "N");
  const ColimitObject u4c = weighted_colimit(constant_weight(aref, FinSet::singleton("*")), f);
  const IsoWitness u4 = attempt([&] {
    return iso_from_map(colimit_factorize(
        mr.reindexed_weight, u4c.carrier,
        [&](std::size_t x, std::size_t, std::size_t y) { return u4c.coproject(x, 0, y); }));
  });
  record_link(r.unit_links[3], u4, "N");
  const ColimitObject& kn = k.colimits[n_b];
  const IsoWitness u5 = attempt([&] {
    return iso_from_map(colimit_factorize(
        u4c, kn.carrier, [&](std::size_t x, std::size_t, std::size_t y) {
          return kn.coproject(x, B.hom_position(cb.terminal[j.obj[x]]), y);
        }));
  });
  record_link(r.unit_links[4], u5, "N");

  if (!find_inverse(kc.unit_comparison).bijective()) {
    if (canonical_ok) r.canonical_detail = "K(N) is not a singleton";
    canonical_ok = false;
  }
  if (u1.ok && u2.ok && mr.iso.ok && u4.ok && u5.ok) {
    const FinFunction phi0_k =
        compose(*u5.forward,
                compose(*u4.forward,
                        compose(*mr.iso.forward, compose(*u2.backward, *u1.forward))));
    if (!(compose(kc.unit_comparison, phi0_k) == FinFunction::identity(phi0_k.dom())) ||
        !find_inverse(kc.unit_comparison).bijective()) {
      if (composite_ok) r.composite_detail = "unit composite is not inverse to K(N) -> 1";
      composite_ok = false;
    }
  } else {
    if (composite_ok) r.composite_detail = "unit composite not formed";
    composite_ok = false;
  }
  r.composite_matches_canonical = composite_ok;
  r.canonical_strong = canonical_ok;

  // naturality of the composite in (b1, b2)
  bool natural = !composites.empty() || r.pairs_checked == 0;
  if (composites.empty() && r.pairs_checked) r.naturality_detail = "no composite formed";
  for (std::size_t g1 = 0; g1 < B.morphism_count() && natural; ++g1) {
    for (std::size_t g2 = 0; g2 < B.morphism_count() && natural; ++g2) {
      auto s = composites.find({B.src(g1), B.src(g2)});
      auto t = composites.find({B.dst(g1), B.dst(g2)});
      if (s == composites.end() || t == composites.end()) continue;
      const std::size_t g12 = cb.monoidal.tensor_morphism(g1, g2);
      const FinFunction lhs = compose(k.lan.maps[g12], s->second);
      const FinFunction rhs =
          compose(t->second, product_map(kk_products.at(s->first), kk_products.at(t->first),
                                         k.lan.maps[g1], k.lan.maps[g2]));
      if (!(lhs == rhs)) {
        natural = false;
        r.naturality_detail = "composite is not natural at (" + B.label(g1) + "," +
                              B.label(g2) + ")";
      }
    }
  }
  r.natural = natural;
  r.well_defined = natural && composites.size() == r.pairs_checked;
  return r;
}

}  // namespace kanext
