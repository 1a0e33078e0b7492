#pragma once

// Brute-force reference computations. They read only the raw tables of the
// inputs and share no algorithm with the library.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "kanext/colimit.hpp"
#include "kanext/lawvere.hpp"

namespace oracle {

using kanext::FinCategory;
using kanext::SetFunctor;
using kanext::Weight;

/// Connected components of an undirected graph given as an edge list; ids by
/// first appearance.
inline std::vector<std::size_t> components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> id(n, kanext::npos);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (id[s] != kanext::npos) continue;
    std::vector<std::size_t> stack{s};
    id[s] = next;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : adj[v]) {
        if (id[u] == kanext::npos) {
          id[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return id;
}

inline std::size_t count_ids(const std::vector<std::size_t>& ids) {
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

/// The coend of W and F as a partition of the flat list of triples (a, w, x),
/// a-major, then w, then x.
struct Coend {
  std::vector<std::size_t> offset;  // first triple of each object
  std::vector<std::size_t> cls;     // component of each triple
  std::size_t size = 0;

  std::size_t at(const Weight& w, const SetFunctor& f, std::size_t a, std::size_t wi, std::size_t x) const {
    (void)w;
    return cls[offset[a] + wi * f.sets[a].size() + x];
  }
};

/// (W f (w), x) ~ (w, F f (x)) for every f : a → b, w ∈ W b, x ∈ F a.
inline Coend coend(const Weight& w, const SetFunctor& f) {
  const FinCategory& c = *f.base;
  Coend out;
  std::size_t n = 0;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    out.offset.push_back(n);
    n += w.sets[a].size() * f.sets[a].size();
  }
  auto flat = [&](std::size_t a, std::size_t wi, std::size_t x) { return out.offset[a] + wi * f.sets[a].size() + x; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t a = c.src(m), b = c.dst(m);
    for (std::size_t wb = 0; wb < w.sets[b].size(); ++wb) {
      for (std::size_t x = 0; x < f.sets[a].size(); ++x) {
        edges.emplace_back(flat(a, w.maps[m](wb), x), flat(b, wb, f.maps[m](x)));
      }
    }
  }
  out.cls = components(n, edges);
  out.size = count_ids(out.cls);
  return out;
}

/// The library colimit induces the same partition of the triples as the oracle.
inline bool same_partition(const kanext::ColimitObject& lib, const Weight& w, const SetFunctor& f) {
  const Coend o = coend(w, f);
  if (o.size != lib.carrier.size()) return false;
  std::vector<std::size_t> to_lib(o.size, kanext::npos);
  for (std::size_t a = 0; a < f.base->object_count(); ++a) {
    for (std::size_t wi = 0; wi < w.sets[a].size(); ++wi) {
      for (std::size_t x = 0; x < f.sets[a].size(); ++x) {
        const std::size_t oc = o.at(w, f, a, wi, x), lc = lib.coproject(a, wi, x);
        if (to_lib[oc] == kanext::npos) to_lib[oc] = lc;
        if (to_lib[oc] != lc) return false;
      }
    }
  }
  return true;
}

/// The representable weight C(−, a0) built from the composition table.
inline Weight representable(const kanext::CatRef& c, std::size_t a0) {
  Weight w{c, {}, {}};
  for (std::size_t a = 0; a < c->object_count(); ++a) w.sets.push_back(c->hom_set(a, a0));
  for (std::size_t m = 0; m < c->morphism_count(); ++m) {
    const std::size_t a = c->src(m), b = c->dst(m);
    std::vector<std::size_t> table;
    for (std::size_t g : c->hom(b, a0)) table.push_back(c->hom_position(c->compose(g, m)));
    w.maps.emplace_back(w.sets[b], w.sets[a], table);
  }
  return w;
}

/// colim over A1 × A2 of (W1 ⊠ W2, F) for F over tensor_category(A1, A2).
inline std::size_t joint_coend_size(const Weight& w1, const Weight& w2, const SetFunctor& f) {
  const FinCategory& c1 = *w1.base;
  const FinCategory& c2 = *w2.base;
  const std::size_t n2 = c2.object_count(), m2 = c2.morphism_count();
  std::vector<std::size_t> offset;
  std::size_t n = 0;
  for (std::size_t a = 0; a < c1.object_count(); ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      offset.push_back(n);
      n += w1.sets[a].size() * w2.sets[b].size() * f.sets[a * n2 + b].size();
    }
  }
  auto flat = [&](std::size_t a, std::size_t b, std::size_t u, std::size_t v, std::size_t x) {
    return offset[a * n2 + b] + (u * w2.sets[b].size() + v) * f.sets[a * n2 + b].size() + x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t m1 = 0; m1 < c1.morphism_count(); ++m1) {
    for (std::size_t k2 = 0; k2 < m2; ++k2) {
      const std::size_t a = c1.src(m1), a2 = c1.dst(m1), b = c2.src(k2), b2 = c2.dst(k2);
      const kanext::FinFunction& fm = f.maps[m1 * m2 + k2];
      for (std::size_t u = 0; u < w1.sets[a2].size(); ++u) {
        for (std::size_t v = 0; v < w2.sets[b2].size(); ++v) {
          for (std::size_t x = 0; x < f.sets[a * n2 + b].size(); ++x) {
            edges.emplace_back(flat(a, b, w1.maps[m1](u), w2.maps[k2](v), x), flat(a2, b2, u, v, fm(x)));
          }
        }
      }
    }
  }
  return count_ids(components(n, edges));
}

/// Isomorphism of two algebras with the same signature by trying every bijection.
inline bool isomorphic_algebras(std::size_t n1, const std::vector<std::vector<std::size_t>>& ops1,
                                std::size_t n2, const std::vector<std::vector<std::size_t>>& ops2,
                                const std::vector<std::size_t>& arities) {
  if (n1 != n2 || ops1.size() != ops2.size()) return false;
  std::vector<std::size_t> perm(n1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t k = 0; k < ops1.size() && ok; ++k) {
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < arities[k]; ++i) tuples *= n1;
      for (std::size_t t = 0; t < tuples && ok; ++t) {
        // image of the argument tuple under perm, in base n
        std::size_t rest = t, image = 0, scale = 1;
        std::vector<std::size_t> digits(arities[k]);
        for (std::size_t i = arities[k]; i-- > 0;) {
          digits[i] = rest % n1;
          rest /= n1;
        }
        for (std::size_t i = arities[k]; i-- > 0;) {
          image += perm[digits[i]] * scale;
          scale *= n1;
        }
        ok = perm[ops1[k][t]] == ops2[k][image];
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// The free pointed set on n generators: n + 1 elements, the point last.
inline std::vector<std::vector<std::size_t>> free_pointed_set(std::size_t n) { return {{n}}; }

/// The free set with an involution on n generators: generator i is 2i, its
/// image under s is 2i + 1.
inline std::vector<std::vector<std::size_t>> free_involution_set(std::size_t n) {
  std::vector<std::size_t> s(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s[2 * i] = 2 * i + 1;
    s[2 * i + 1] = 2 * i;
  }
  return {s};
}

}  // namespace oracle
