#include "kanext/monoidal.hpp"

#include <algorithm>
#include <initializer_list>

namespace kanext {

namespace {

/// m_k ∘ ... ∘ m_1 for the list {m_k, ..., m_1}; npos if any piece is missing.
std::size_t chain(const FinCategory& c, std::initializer_list<std::size_t> ms) {
  std::size_t acc = npos;
  for (auto it = std::rbegin(ms); it != std::rend(ms); ++it) {
    if (*it == npos) return npos;
    if (acc == npos) {
      acc = *it;
    } else {
      acc = c.compose(*it, acc);
      if (acc == npos) return npos;
    }
  }
  return acc;
}

std::string pair_name(const FinCategory& c, std::size_t a, std::size_t b) {
  return "(" + c.object(a) + "," + c.object(b) + ")";
}

bool endpoints(const FinCategory& c, std::size_t m, std::size_t s, std::size_t d) {
  return m != npos && m < c.morphism_count() && c.src(m) == s && c.dst(m) == d;
}

}  // namespace

bool MonoidalStructure::total() const {
  return std::none_of(tensor_obj.begin(), tensor_obj.end(),
                      [](std::size_t t) { return t == npos; });
}

PairCategory MonoidalStructure::defined_pairs() const {
  return pair_category(base, base, [this](std::size_t a, std::size_t b) { return defined(a, b); });
}

CatFunctor MonoidalStructure::tensor_functor(const PairCategory& pairs) const {
  CatFunctor f{pairs.cat, base, {}, {}};
  for (const auto& [a, b] : pairs.objects) f.obj.push_back(tensor(a, b));
  for (const auto& [g, h] : pairs.morphisms) f.mor.push_back(tensor_morphism(g, h));
  return f;
}

std::size_t inverse_morphism(const FinCategory& c, std::size_t m) {
  for (std::size_t k : c.hom(c.dst(m), c.src(m))) {
    if (c.compose(k, m) == c.identity(c.src(m)) && c.compose(m, k) == c.identity(c.dst(m))) {
      return k;
    }
  }
  return npos;
}

ValidationReport validate_monoidal(const MonoidalStructure& m,
                                   const MonoidalCheckOptions& options) {
  ValidationReport r;
  const FinCategory& c = *m.base;
  const std::size_t n = c.object_count();
  const std::size_t mc = c.morphism_count();
  if (m.tensor_obj.size() != n * n || m.tensor_mor.size() != mc * mc ||
      m.associator.size() != n * n * n || m.left_unitor.size() != n ||
      m.right_unitor.size() != n || m.unit >= n) {
    r.add("monoidal data has the wrong shape");
    return r;
  }
  if (!m.total()) r.notes.push_back("tensor is partial; checks cover defined instances only");

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (m.defined(a, b) &&
          m.tensor_morphism(c.identity(a), c.identity(b)) != c.identity(m.tensor(a, b))) {
        r.add("id " + c.object(a) + " * id " + c.object(b) + " is not an identity");
      }
    }
  }
  for (std::size_t f = 0; f < mc; ++f) {
    for (std::size_t g = 0; g < mc; ++g) {
      const std::size_t s = m.tensor(c.src(f), c.src(g));
      const std::size_t d = m.tensor(c.dst(f), c.dst(g));
      if (s == npos || d == npos) continue;
      if (!endpoints(c, m.tensor_morphism(f, g), s, d)) {
        r.add("tensor of " + c.label(f) + " and " + c.label(g) + " is missing or mistyped");
      }
    }
  }
  if (!r.ok()) return r;

  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t na = m.tensor(m.unit, a);
    if (na != npos && (!endpoints(c, m.left_unitor[a], na, a) ||
                       inverse_morphism(c, m.left_unitor[a]) == npos)) {
      r.add("left unitor at " + c.object(a) + " is not an isomorphism N*a -> a");
    }
    const std::size_t an = m.tensor(a, m.unit);
    if (an != npos && (!endpoints(c, m.right_unitor[a], an, a) ||
                       inverse_morphism(c, m.right_unitor[a]) == npos)) {
      r.add("right unitor at " + c.object(a) + " is not an isomorphism a*N -> a");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        const std::size_t ab = m.tensor(a, b);
        const std::size_t bd = m.tensor(b, d);
        if (ab == npos || bd == npos) continue;
        const std::size_t l = m.tensor(ab, d);
        const std::size_t rr = m.tensor(a, bd);
        if (l == npos || rr == npos) continue;
        const std::size_t al = m.alpha(a, b, d);
        if (!endpoints(c, al, l, rr) || inverse_morphism(c, al) == npos) {
          r.add("associator at (" + c.object(a) + "," + c.object(b) + "," + c.object(d) +
                ") is not an isomorphism");
        }
      }
    }
  }
  if (!r.ok()) return r;

  if (options.naturality) {
    // functoriality of the tensor
    for (std::size_t f = 0; f < mc; ++f) {
      for (std::size_t g = 0; g < mc; ++g) {
        const std::size_t fg = m.tensor_morphism(f, g);
        if (fg == npos) continue;
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            if (!m.defined(x, y)) continue;
            for (std::size_t f2 : c.hom(c.dst(f), x)) {
              for (std::size_t g2 : c.hom(c.dst(g), y)) {
                const std::size_t lhs = c.compose(m.tensor_morphism(f2, g2), fg);
                const std::size_t rhs =
                    m.tensor_morphism(c.compose(f2, f), c.compose(g2, g));
                if (lhs != rhs) {
                  r.add("tensor is not functorial at (" + c.label(f2) + "," + c.label(g2) +
                        ") after (" + c.label(f) + "," + c.label(g) + ")");
                }
              }
            }
          }
        }
      }
    }
    // naturality of the unitors
    for (std::size_t f = 0; f < mc; ++f) {
      const std::size_t a = c.src(f), b = c.dst(f);
      const std::size_t idn = c.identity(m.unit);
      if (m.defined(m.unit, a) && m.defined(m.unit, b) &&
          chain(c, {m.left_unitor[b], m.tensor_morphism(idn, f)}) !=
              chain(c, {f, m.left_unitor[a]})) {
        r.add("left unitor is not natural at " + c.label(f));
      }
      if (m.defined(a, m.unit) && m.defined(b, m.unit) &&
          chain(c, {m.right_unitor[b], m.tensor_morphism(f, idn)}) !=
              chain(c, {f, m.right_unitor[a]})) {
        r.add("right unitor is not natural at " + c.label(f));
      }
    }
    // naturality of the associator
    for (std::size_t f = 0; f < mc; ++f) {
      for (std::size_t g = 0; g < mc; ++g) {
        const std::size_t fg = m.tensor_morphism(f, g);
        if (fg == npos) continue;
        for (std::size_t h = 0; h < mc; ++h) {
          const std::size_t lhs_t = m.tensor_morphism(fg, h);
          const std::size_t gh = m.tensor_morphism(g, h);
          if (lhs_t == npos || gh == npos) continue;
          const std::size_t rhs_t = m.tensor_morphism(f, gh);
          if (rhs_t == npos) continue;
          const std::size_t src_alpha = m.alpha(c.src(f), c.src(g), c.src(h));
          const std::size_t dst_alpha = m.alpha(c.dst(f), c.dst(g), c.dst(h));
          if (chain(c, {dst_alpha, lhs_t}) != chain(c, {rhs_t, src_alpha})) {
            r.add("associator is not natural at (" + c.label(f) + "," + c.label(g) + "," +
                  c.label(h) + ")");
          }
        }
      }
    }
  } else {
    r.notes.push_back("functoriality and naturality checks skipped");
  }

  if (options.coherence) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        // triangle: (id_a * λ_b) ∘ α_{a,N,b} = ρ_a * id_b
        const std::size_t an = m.tensor(a, m.unit);
        const std::size_t nb = m.tensor(m.unit, b);
        if (an != npos && nb != npos && m.defined(an, b) && m.defined(a, nb)) {
          const std::size_t lhs = chain(c, {m.tensor_morphism(c.identity(a), m.left_unitor[b]),
                                            m.alpha(a, m.unit, b)});
          const std::size_t rhs = m.tensor_morphism(m.right_unitor[a], c.identity(b));
          if (lhs != rhs) r.add("triangle fails at " + pair_name(c, a, b));
        }
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            const std::size_t ab = m.tensor(a, b), xy = m.tensor(x, y);
            const std::size_t bx = m.tensor(b, x);
            if (ab == npos || xy == npos || bx == npos) continue;
            const std::size_t bxy = m.tensor(bx, y), b_xy = m.tensor(b, xy);
            const std::size_t abx = m.tensor(ab, x), a_bx = m.tensor(a, bx);
            if (bxy == npos || b_xy == npos || abx == npos || a_bx == npos) continue;
            if (!m.defined(abx, y) || !m.defined(ab, xy) || !m.defined(a, b_xy) ||
                !m.defined(a_bx, y) || !m.defined(a, bxy)) {
              continue;
            }
            // α_{a,b,x*y} ∘ α_{a*b,x,y} = (id_a * α_{b,x,y}) ∘ α_{a,b*x,y} ∘ (α_{a,b,x} * id_y)
            const std::size_t lhs = chain(c, {m.alpha(a, b, xy), m.alpha(ab, x, y)});
            const std::size_t rhs =
                chain(c, {m.tensor_morphism(c.identity(a), m.alpha(b, x, y)),
                          m.alpha(a, bx, y), m.tensor_morphism(m.alpha(a, b, x), c.identity(y))});
            if (lhs != rhs) {
              r.add("pentagon fails at (" + c.object(a) + "," + c.object(b) + "," +
                    c.object(x) + "," + c.object(y) + ")");
            }
          }
        }
      }
    }
  } else {
    r.notes.push_back("pentagon and triangle checks skipped");
  }
  return r;
}

std::size_t CartesianStructure::pairing(std::size_t f, std::size_t g) const {
  const FinCategory& c = *monoidal.base;
  if (c.src(f) != c.src(g)) throw Error("pairing: morphisms with different sources");
  const std::size_t a = c.dst(f), b = c.dst(g);
  const std::size_t t = monoidal.tensor(a, b);
  if (t == npos) return npos;
  for (std::size_t k : c.hom(c.src(f), t)) {
    if (c.compose(p1(a, b), k) == f && c.compose(p2(a, b), k) == g) return k;
  }
  throw Error("pairing: no mediating morphism into " + c.object(t));
}

namespace {

/// hom(x, p) → hom(x, a) × hom(x, b), k ↦ (π1 k, π2 k), bijective for all x.
bool is_product_cone(const FinCategory& c, std::size_t p, std::size_t pi1, std::size_t pi2) {
  const std::size_t a = c.dst(pi1), b = c.dst(pi2);
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    const auto& hp = c.hom(x, p);
    const std::size_t na = c.hom(x, a).size(), nb = c.hom(x, b).size();
    if (hp.size() != na * nb) return false;
    std::vector<bool> seen(na * nb, false);
    for (std::size_t k : hp) {
      const std::size_t i =
          c.hom_position(c.compose(pi1, k)) * nb + c.hom_position(c.compose(pi2, k));
      if (seen[i]) return false;
      seen[i] = true;
    }
  }
  return true;
}

}  // namespace

CartesianSearch derive_cartesian(const CatRef& cref, bool allow_partial) {
  const FinCategory& c = *cref;
  const std::size_t n = c.object_count();
  const std::size_t mc = c.morphism_count();
  CartesianSearch out;

  std::size_t term = npos;
  for (std::size_t t = 0; t < n && term == npos; ++t) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = c.hom(a, t).size() == 1;
    if (ok) term = t;
  }
  if (term == npos) {
    out.failure = "no terminal object";
    return out;
  }

  CartesianStructure cs;
  MonoidalStructure& m = cs.monoidal;
  m.base = cref;
  m.unit = term;
  m.tensor_obj.assign(n * n, npos);
  m.tensor_mor.assign(mc * mc, npos);
  m.associator.assign(n * n * n, npos);
  m.left_unitor.assign(n, npos);
  m.right_unitor.assign(n, npos);
  cs.proj1.assign(n * n, npos);
  cs.proj2.assign(n * n, npos);
  for (std::size_t a = 0; a < n; ++a) cs.terminal.push_back(c.hom(a, term).front());

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool found = false;
      for (std::size_t p = 0; p < n && !found; ++p) {
        for (std::size_t f1 : c.hom(p, a)) {
          for (std::size_t f2 : c.hom(p, b)) {
            if (is_product_cone(c, p, f1, f2)) {
              m.tensor_obj[a * n + b] = p;
              cs.proj1[a * n + b] = f1;
              cs.proj2[a * n + b] = f2;
              found = true;
              break;
            }
          }
          if (found) break;
        }
      }
      if (!found && !allow_partial) {
        out.failure = "no product of " + c.object(a) + " and " + c.object(b);
        return out;
      }
    }
  }

  for (std::size_t f = 0; f < mc; ++f) {
    for (std::size_t g = 0; g < mc; ++g) {
      const std::size_t a = c.src(f), b = c.src(g);
      if (!m.defined(a, b) || !m.defined(c.dst(f), c.dst(g))) continue;
      m.tensor_mor[f * mc + g] =
          cs.pairing(c.compose(f, cs.p1(a, b)), c.compose(g, cs.p2(a, b)));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (m.defined(term, a)) m.left_unitor[a] = cs.p2(term, a);
    if (m.defined(a, term)) m.right_unitor[a] = cs.p1(a, term);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = m.tensor(a, b);
      if (ab == npos) continue;
      for (std::size_t d = 0; d < n; ++d) {
        const std::size_t bd = m.tensor(b, d);
        if (bd == npos || !m.defined(ab, d) || !m.defined(a, bd)) continue;
        const std::size_t q1 = cs.p1(ab, d);
        const std::size_t first = c.compose(cs.p1(a, b), q1);
        const std::size_t mid = c.compose(cs.p2(a, b), q1);
        const std::size_t last = cs.p2(ab, d);
        m.associator[(a * n + b) * n + d] = cs.pairing(first, cs.pairing(mid, last));
      }
    }
  }
  out.structure = std::move(cs);
  return out;
}

ValidationReport validate_cartesian(const CartesianStructure& cs,
                                    const MonoidalCheckOptions& options) {
  ValidationReport r;
  const FinCategory& c = *cs.base();
  const std::size_t n = c.object_count();
  const std::size_t term = cs.monoidal.unit;
  for (std::size_t a = 0; a < n; ++a) {
    if (term >= n || c.hom(a, term).size() != 1) {
      r.add("unit object is not terminal (checked at " + c.object(a) + ")");
      return r;
    }
    if (cs.terminal[a] != c.hom(a, term).front()) r.add("wrong terminal map at " + c.object(a));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t p = cs.monoidal.tensor(a, b);
      if (p == npos) continue;
      const std::size_t f1 = cs.p1(a, b), f2 = cs.p2(a, b);
      if (!endpoints(c, f1, p, a) || !endpoints(c, f2, p, b) || !is_product_cone(c, p, f1, f2)) {
        r.add("recorded cone at " + pair_name(c, a, b) + " is not a product");
      }
    }
  }
  if (!r.ok()) return r;
  r.merge(validate_monoidal(cs.monoidal, options));
  if (r.ok() && cs.monoidal.total()) {
    r.merge(validate_adjunction(diagonal_adjunction(cs)), "diagonal adjunction: ");
    r.merge(validate_adjunction(terminal_adjunction(cs)), "terminal adjunction: ");
  }
  return r;
}

Adjunction diagonal_adjunction(const CartesianStructure& cs) {
  const MonoidalStructure& m = cs.monoidal;
  if (!m.total()) throw Error("diagonal_adjunction: the tensor is partial");
  const CatRef& a = m.base;
  const FinCategory& c = *a;
  const CatRef aa = tensor_category(a, a);
  Adjunction adj;
  adj.left = CatFunctor{a, aa, {}, {}};
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    adj.left.obj.push_back(tensor_object(c, x, x));
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    adj.left.mor.push_back(tensor_morphism(c, f, f));
  }
  adj.right = CatFunctor{aa, a, m.tensor_obj, m.tensor_mor};
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    adj.unit.push_back(cs.pairing(c.identity(x), c.identity(x)));
  }
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    for (std::size_t y = 0; y < c.object_count(); ++y) {
      adj.counit.push_back(tensor_morphism(c, cs.p1(x, y), cs.p2(x, y)));
    }
  }
  return adj;
}

Adjunction terminal_adjunction(const CartesianStructure& cs) {
  const CatRef& a = cs.base();
  const FinCategory& c = *a;
  const CatRef i = unit_category();
  Adjunction adj;
  adj.left = CatFunctor{a, i, std::vector<std::size_t>(c.object_count(), 0),
                        std::vector<std::size_t>(c.morphism_count(), i->identity(0))};
  adj.right = CatFunctor{i, a, {cs.monoidal.unit}, {c.identity(cs.monoidal.unit)}};
  adj.unit = cs.terminal;
  adj.counit = {i->identity(0)};
  return adj;
}

ValidationReport validate_monoidal_functor(const MonoidalFunctorData& fd,
                                           const MonoidalCheckOptions& options) {
  ValidationReport r;
  const CatFunctor& f = fd.functor;
  const MonoidalStructure& s = fd.dom;
  const MonoidalStructure& t = fd.cod;
  const FinCategory& a = *s.base;
  const FinCategory& b = *t.base;
  const std::size_t n = a.object_count();
  const bool mono = fd.direction == ConstraintDirection::Monoidal;
  if (!same_category(f.dom, s.base) || !same_category(f.cod, t.base) ||
      fd.tensor_constraint.size() != n * n) {
    r.add("monoidal functor data has the wrong shape");
    return r;
  }
  auto phi = [&](std::size_t x, std::size_t y) { return fd.tensor_constraint[x * n + y]; };

  std::size_t skipped = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!s.defined(x, y)) continue;
      const std::size_t img = t.tensor(f.obj[x], f.obj[y]);
      if (img == npos) {
        ++skipped;
        continue;
      }
      const std::size_t fxy = f.obj[s.tensor(x, y)];
      const bool typed = mono ? endpoints(b, phi(x, y), img, fxy) : endpoints(b, phi(x, y), fxy, img);
      if (!typed) {
        r.add("constraint at " + pair_name(a, x, y) + " is missing or mistyped");
      } else if (fd.strong && inverse_morphism(b, phi(x, y)) == npos) {
        r.add("constraint at " + pair_name(a, x, y) + " is not invertible");
      }
    }
  }
  const std::size_t fn = f.obj[s.unit];
  const bool unit_typed = mono ? endpoints(b, fd.unit_constraint, t.unit, fn)
                               : endpoints(b, fd.unit_constraint, fn, t.unit);
  if (!unit_typed) {
    r.add("unit constraint is missing or mistyped");
  } else if (fd.strong && inverse_morphism(b, fd.unit_constraint) == npos) {
    r.add("unit constraint is not invertible");
  }
  if (skipped) {
    r.notes.push_back(std::to_string(skipped) + " constraint(s) skipped: image tensor undefined");
  }
  if (!r.ok()) return r;

  if (options.naturality) {
    for (std::size_t g = 0; g < a.morphism_count(); ++g) {
      for (std::size_t h = 0; h < a.morphism_count(); ++h) {
        const std::size_t gh = s.tensor_morphism(g, h);
        const std::size_t fgfh = t.tensor_morphism(f.mor[g], f.mor[h]);
        if (gh == npos || fgfh == npos) continue;
        const std::size_t src = phi(a.src(g), a.src(h));
        const std::size_t dst = phi(a.dst(g), a.dst(h));
        if (src == npos || dst == npos) continue;
        const bool ok = mono ? chain(b, {f.mor[gh], src}) == chain(b, {dst, fgfh})
                             : chain(b, {fgfh, src}) == chain(b, {dst, f.mor[gh]});
        if (!ok) {
          r.add("constraint is not natural at (" + a.label(g) + "," + a.label(h) + ")");
        }
      }
    }
  } else {
    r.notes.push_back("naturality of the constraints skipped");
  }

  if (options.coherence) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          const std::size_t xy = s.tensor(x, y), yz = s.tensor(y, z);
          if (xy == npos || yz == npos || !s.defined(xy, z) || !s.defined(x, yz)) continue;
          const std::size_t fx = f.obj[x], fy = f.obj[y], fz = f.obj[z];
          const std::size_t idx = b.identity(fx), idz = b.identity(fz);
          const std::size_t alpha_img = t.alpha(fx, fy, fz);
          const std::size_t fa = f.mor[s.alpha(x, y, z)];
          std::size_t lhs, rhs;
          if (mono) {
            lhs = chain(b, {fa, phi(xy, z), t.tensor_morphism(phi(x, y), idz)});
            rhs = chain(b, {phi(x, yz), t.tensor_morphism(idx, phi(y, z)), alpha_img});
          } else {
            lhs = chain(b, {alpha_img, t.tensor_morphism(phi(x, y), idz), phi(xy, z)});
            rhs = chain(b, {t.tensor_morphism(idx, phi(y, z)), phi(x, yz), fa});
          }
          if (lhs == npos || rhs == npos) continue;
          if (lhs != rhs) {
            r.add("associativity coherence fails at (" + a.object(x) + "," + a.object(y) + "," +
                  a.object(z) + ")");
          }
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t fx = f.obj[x];
      const std::size_t idfx = b.identity(fx);
      if (s.defined(s.unit, x)) {
        std::size_t lhs, rhs;
        if (mono) {
          lhs = chain(b, {f.mor[s.left_unitor[x]], phi(s.unit, x),
                          t.tensor_morphism(fd.unit_constraint, idfx)});
          rhs = t.left_unitor[fx];
        } else {
          lhs = chain(b, {t.left_unitor[fx], t.tensor_morphism(fd.unit_constraint, idfx),
                          phi(s.unit, x)});
          rhs = f.mor[s.left_unitor[x]];
        }
        if (lhs != npos && rhs != npos && lhs != rhs) {
          r.add("left unit coherence fails at " + a.object(x));
        }
      }
      if (s.defined(x, s.unit)) {
        std::size_t lhs, rhs;
        if (mono) {
          lhs = chain(b, {f.mor[s.right_unitor[x]], phi(x, s.unit),
                          t.tensor_morphism(idfx, fd.unit_constraint)});
          rhs = t.right_unitor[fx];
        } else {
          lhs = chain(b, {t.right_unitor[fx], t.tensor_morphism(idfx, fd.unit_constraint),
                          phi(x, s.unit)});
          rhs = f.mor[s.right_unitor[x]];
        }
        if (lhs != npos && rhs != npos && lhs != rhs) {
          r.add("right unit coherence fails at " + a.object(x));
        }
      }
    }
  } else {
    r.notes.push_back("coherence of the constraints skipped");
  }
  return r;
}

CanonicalConstraints constraints_from_cartesian(const CatFunctor& f, const CartesianStructure& dom,
                                                const CartesianStructure& cod) {
  const FinCategory& a = *dom.base();
  const FinCategory& b = *cod.base();
  const std::size_t n = a.object_count();
  CanonicalConstraints out;
  MonoidalFunctorData& psi = out.comonoidal;
  psi.functor = f;
  psi.dom = dom.monoidal;
  psi.cod = cod.monoidal;
  psi.direction = ConstraintDirection::Comonoidal;
  psi.tensor_constraint.assign(n * n, npos);
  psi.unit_constraint = cod.terminal[f.obj[dom.monoidal.unit]];

  bool invertible = inverse_morphism(b, psi.unit_constraint) != npos;
  if (!invertible) out.detail = "F(N) -> N is not invertible";
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!dom.monoidal.defined(x, y)) continue;
      if (!cod.monoidal.defined(f.obj[x], f.obj[y])) {
        if (invertible) out.detail = "image tensor undefined at " + pair_name(a, x, y);
        invertible = false;
        continue;
      }
      const std::size_t k = cod.pairing(f.mor[dom.p1(x, y)], f.mor[dom.p2(x, y)]);
      psi.tensor_constraint[x * n + y] = k;
      if (invertible && inverse_morphism(b, k) == npos) {
        out.detail = "F(a*b) -> Fa*Fb is not invertible at " + pair_name(a, x, y);
        invertible = false;
      }
    }
  }
  if (invertible) {
    psi.strong = true;
    MonoidalFunctorData phi = psi;
    phi.direction = ConstraintDirection::Monoidal;
    for (std::size_t& k : phi.tensor_constraint) {
      if (k != npos) k = inverse_morphism(b, k);
    }
    phi.unit_constraint = inverse_morphism(b, psi.unit_constraint);
    out.strong = std::move(phi);
  }
  return out;
}

ValidationReport validate_set_monoidal(const SetMonoidalData& fd,
                                       const MonoidalCheckOptions& options) {
  ValidationReport r;
  const SetFunctor& f = fd.functor;
  const MonoidalStructure& s = fd.dom;
  const FinCategory& a = *s.base;
  const std::size_t n = a.object_count();
  if (!same_category(f.base, s.base) || fd.tensor_constraint.size() != n * n ||
      fd.products.size() != n * n) {
    r.add("monoidal data has the wrong shape");
    return r;
  }
  auto phi = [&](std::size_t x, std::size_t y) -> const FinFunction& {
    return *fd.tensor_constraint[x * n + y];
  };
  auto prod = [&](std::size_t x, std::size_t y) -> const Product& {
    return fd.products[x * n + y];
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!s.defined(x, y)) continue;
      const auto& c = fd.tensor_constraint[x * n + y];
      if (!c || !(c->dom() == prod(x, y).set) || !(c->cod() == f.sets[s.tensor(x, y)])) {
        r.add("constraint at " + pair_name(a, x, y) + " is missing or mistyped");
      } else if (fd.strong && !find_inverse(*c).bijective()) {
        r.add("constraint at " + pair_name(a, x, y) + " is not a bijection");
      }
    }
  }
  if (fd.unit_constraint.dom().size() != 1 || !(fd.unit_constraint.cod() == f.sets[s.unit])) {
    r.add("unit constraint is not a map 1 -> F(N)");
  } else if (fd.strong && !find_inverse(fd.unit_constraint).bijective()) {
    r.add("unit constraint is not a bijection");
  }
  if (!r.ok()) return r;

  if (options.naturality) {
    for (std::size_t g = 0; g < a.morphism_count(); ++g) {
      for (std::size_t h = 0; h < a.morphism_count(); ++h) {
        const std::size_t gh = s.tensor_morphism(g, h);
        if (gh == npos) continue;
        const std::size_t x = a.src(g), y = a.src(h), x2 = a.dst(g), y2 = a.dst(h);
        bool ok = true;
        for (std::size_t p = 0; p < prod(x, y).set.size() && ok; ++p) {
          const std::size_t u = prod(x, y).first(p), v = prod(x, y).second(p);
          ok = f.maps[gh](phi(x, y)(p)) ==
               phi(x2, y2)(prod(x2, y2).pair(f.maps[g](u), f.maps[h](v)));
        }
        if (!ok) r.add("constraint is not natural at (" + a.label(g) + "," + a.label(h) + ")");
      }
    }
  } else {
    r.notes.push_back("naturality of the constraints skipped");
  }

  if (options.coherence) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          const std::size_t xy = s.tensor(x, y), yz = s.tensor(y, z);
          if (xy == npos || yz == npos || !s.defined(xy, z) || !s.defined(x, yz)) continue;
          const FinFunction& fa = f.maps[s.alpha(x, y, z)];
          bool ok = true;
          for (std::size_t u = 0; u < f.sets[x].size() && ok; ++u) {
            for (std::size_t v = 0; v < f.sets[y].size() && ok; ++v) {
              for (std::size_t w = 0; w < f.sets[z].size() && ok; ++w) {
                const std::size_t lhs =
                    fa(phi(xy, z)(prod(xy, z).pair(phi(x, y)(prod(x, y).pair(u, v)), w)));
                const std::size_t rhs =
                    phi(x, yz)(prod(x, yz).pair(u, phi(y, z)(prod(y, z).pair(v, w))));
                ok = lhs == rhs;
              }
            }
          }
          if (!ok) {
            r.add("associativity coherence fails at (" + a.object(x) + "," + a.object(y) + "," +
                  a.object(z) + ")");
          }
        }
      }
    }
    const std::size_t e = fd.unit_constraint(0);
    for (std::size_t x = 0; x < n; ++x) {
      if (s.defined(s.unit, x)) {
        bool ok = true;
        for (std::size_t v = 0; v < f.sets[x].size() && ok; ++v) {
          ok = f.maps[s.left_unitor[x]](phi(s.unit, x)(prod(s.unit, x).pair(e, v))) == v;
        }
        if (!ok) r.add("left unit coherence fails at " + a.object(x));
      }
      if (s.defined(x, s.unit)) {
        bool ok = true;
        for (std::size_t u = 0; u < f.sets[x].size() && ok; ++u) {
          ok = f.maps[s.right_unitor[x]](phi(x, s.unit)(prod(x, s.unit).pair(u, e))) == u;
        }
        if (!ok) r.add("right unit coherence fails at " + a.object(x));
      }
    }
  } else {
    r.notes.push_back("coherence of the constraints skipped");
  }
  return r;
}

SetCanonicalConstraints set_constraints_from_cartesian(const SetFunctor& f,
                                                       const CartesianStructure& cs) {
  const MonoidalStructure& s = cs.monoidal;
  const FinCategory& a = *s.base;
  const std::size_t n = a.object_count();
  if (!same_category(f.base, s.base)) throw Error("set constraints: functor over another category");
  SetCanonicalConstraints out;
  std::vector<Product> products;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) products.push_back(product(f.sets[x], f.sets[y]));
  }
  const FinSet one = FinSet::singleton("*");
  out.unit_comparison =
      FinFunction(f.sets[s.unit], one, std::vector<std::size_t>(f.sets[s.unit].size(), 0));
  bool invertible = true;
  auto unit_inv = find_inverse(out.unit_comparison);
  if (!unit_inv.bijective()) {
    invertible = false;
    out.detail = "F(N) -> 1 is not a bijection: " + unit_inv.describe(out.unit_comparison);
  }
  std::vector<std::optional<FinFunction>> inverses(n * n);
  out.comparison.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = s.tensor(x, y);
      if (xy == npos) continue;
      const Product& p = products[x * n + y];
      const FinFunction& l = f.maps[cs.p1(x, y)];
      const FinFunction& rr = f.maps[cs.p2(x, y)];
      std::vector<std::size_t> table(f.sets[xy].size());
      for (std::size_t z = 0; z < table.size(); ++z) table[z] = p.pair(l(z), rr(z));
      out.comparison[x * n + y] = FinFunction(f.sets[xy], p.set, std::move(table));
      auto inv = find_inverse(*out.comparison[x * n + y]);
      if (inv.bijective()) {
        inverses[x * n + y] = std::move(inv.inverse);
      } else if (invertible) {
        invertible = false;
        out.detail = "F(a*b) -> Fa x Fb at " + pair_name(a, x, y) + " is " +
                     inv.describe(*out.comparison[x * n + y]);
      }
    }
  }
  if (invertible) {
    out.strong = SetMonoidalData{f, s, std::move(products), std::move(inverses),
                                 *unit_inv.inverse, true};
  }
  return out;
}

}  // namespace kanext
