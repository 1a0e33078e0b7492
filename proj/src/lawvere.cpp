#include "kanext/lawvere.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace kanext {

// Terms ------------------------------------------------------------------------------

std::size_t Term::variable_bound() const {
  if (is_variable()) return var + 1;
  std::size_t bound = 0;
  for (const Term& a : args) bound = std::max(bound, a.variable_bound());
  return bound;
}

std::string to_string(const Term& t) {
  if (t.is_variable()) return "x" + std::to_string(t.var + 1);
  if (t.args.empty()) return t.op;
  std::string out = t.op + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

bool operator==(const Term& a, const Term& b) {
  return a.var == b.var && a.op == b.op && a.args == b.args;
}

namespace {

std::size_t op_index(const std::vector<Operation>& ops, const std::string& name) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].name == name) return i;
  }
  return npos;
}

std::optional<std::size_t> variable_name(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return std::nullopt;
  std::size_t v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(s[i] - '0');
  }
  if (v == 0) return std::nullopt;
  return v - 1;
}

class TermParser {
 public:
  TermParser(const std::string& text, const std::vector<Operation>& ops) : s_(text), ops_(ops) {}

  Term parse() {
    Term t = term();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("term '" + s_ + "': " + what + " at column " + std::to_string(pos_ + 1));
  }
  Term term() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a symbol");
    const std::string name = s_.substr(start, pos_ - start);
    std::vector<Term> args;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        args.push_back(term());
        skip();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    const std::size_t op = op_index(ops_, name);
    if (op == npos) {
      const auto v = variable_name(name);
      if (!v || !args.empty()) fail("unknown operation '" + name + "'");
      return Term::variable(*v);
    }
    if (args.size() != ops_[op].arity) {
      fail("'" + name + "' takes " + std::to_string(ops_[op].arity) + " argument(s)");
    }
    return Term::apply(name, std::move(args));
  }

  const std::string& s_;
  const std::vector<Operation>& ops_;
  std::size_t pos_ = 0;
};

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base && out > npos / base) return npos;
    out *= base;
  }
  return out;
}

/// Digits of `code` in base `base`, most significant first.
std::vector<std::size_t> decode(std::size_t code, std::size_t base, std::size_t digits) {
  std::vector<std::size_t> out(digits);
  for (std::size_t i = digits; i-- > 0;) {
    out[i] = code % base;
    code /= base;
  }
  return out;
}

std::size_t encode(const std::vector<std::size_t>& digits, std::size_t base) {
  std::size_t code = 0;
  for (std::size_t d : digits) code = code * base + d;
  return code;
}

/// Evaluates a term given the meaning of variables and of operations.
template <class VarFn, class ApplyFn>
std::size_t evaluate(const Term& t, const std::vector<Operation>& ops, VarFn&& var,
                     ApplyFn&& apply) {
  if (t.is_variable()) return var(t.var);
  std::vector<std::size_t> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(evaluate(a, ops, var, apply));
  return apply(op_index(ops, t.op), args);
}

void check_term(const Term& t, const std::vector<Operation>& ops, ValidationReport& r,
                const std::string& where) {
  if (t.is_variable()) return;
  const std::size_t op = op_index(ops, t.op);
  if (op == npos) {
    r.add(where + ": unknown operation '" + t.op + "'");
    return;
  }
  if (t.args.size() != ops[op].arity) r.add(where + ": '" + t.op + "' applied with wrong arity");
  for (const Term& a : t.args) check_term(a, ops, r, where);
}

}  // namespace

Term parse_term(const std::string& text, const std::vector<Operation>& ops) {
  return TermParser(text, ops).parse();
}

ValidationReport validate_presentation(const TheoryPresentation& p) {
  ValidationReport r;
  if (p.truncation == 0) r.add("truncation level must be at least 1");
  std::set<std::string> names;
  for (const Operation& o : p.operations) {
    if (!names.insert(o.name).second) r.add("operation '" + o.name + "' declared twice");
    if (variable_name(o.name)) r.add("operation '" + o.name + "' shadows a variable");
    if (o.name.empty()) r.add("operation with an empty name");
    if (o.arity > p.truncation) {
      r.add("operation '" + o.name + "' has arity " + std::to_string(o.arity) +
            " above the truncation level");
    }
  }
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const std::string where = "equation " + std::to_string(i + 1);
    check_term(p.equations[i].lhs, p.operations, r, where);
    check_term(p.equations[i].rhs, p.operations, r, where);
  }
  return r;
}

// Free algebras --------------------------------------------------------------------------

std::size_t FreeAlgebra::apply(std::size_t op, const std::vector<std::size_t>& args) const {
  return tables[op][encode(args, size())];
}

namespace {

/// Terms in m variables up to the congruence generated by the equations.
class EGraph {
 public:
  EGraph(const TheoryPresentation& p, std::size_t m, std::size_t guard) : p_(p), guard_(guard) {
    for (std::size_t i = 0; i < m; ++i) fresh(Term::variable(i));
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  std::size_t add(std::size_t op, std::vector<std::size_t> args) {
    for (std::size_t& a : args) a = find(a);
    const auto key = std::make_pair(op, args);
    const auto it = nodes_.find(key);
    if (it != nodes_.end()) return find(it->second);
    std::vector<Term> sub;
    for (std::size_t a : args) sub.push_back(rep_[a]);
    const std::size_t id = fresh(Term::apply(p_.operations[op].name, std::move(sub)));
    nodes_.emplace(key, id);
    if (nodes_.size() > guard_) {
      throw Error("theory '" + p_.name + "': more than " + std::to_string(guard_) +
                  " terms explored in " + std::to_string(variables()) +
                  " variable(s); hom-sets too large or infinite at this truncation");
    }
    return id;
  }

  std::size_t eval(const Term& t, const std::vector<std::size_t>& assignment) {
    return evaluate(
        t, p_.operations, [&](std::size_t v) { return assignment[v]; },
        [&](std::size_t op, const std::vector<std::size_t>& args) { return add(op, args); });
  }

  /// Restores congruence: nodes with equal canonical keys share a class.
  void rebuild() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> next;
      for (auto& [key, cls] : nodes_) {
        auto k = key;
        for (std::size_t& a : k.second) a = find(a);
        const auto [it, inserted] = next.emplace(k, cls);
        if (!inserted && find(it->second) != find(cls)) {
          unite(it->second, cls);
          changed = true;
        }
      }
      nodes_ = std::move(next);
    }
  }

  std::vector<std::size_t> roots() {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      if (find(i) == i) out.push_back(i);
    }
    return out;
  }

  const Term& rep(std::size_t id) const { return rep_[id]; }
  std::size_t variables() const { return variables_; }

  std::size_t node(std::size_t op, std::vector<std::size_t> args) {
    for (std::size_t& a : args) a = find(a);
    return find(nodes_.at(std::make_pair(op, args)));
  }

 private:
  std::size_t fresh(Term t) {
    if (t.is_variable()) ++variables_;
    parent_.push_back(parent_.size());
    rep_.push_back(std::move(t));
    return parent_.size() - 1;
  }

  const TheoryPresentation& p_;
  std::size_t guard_;
  std::size_t variables_ = 0;
  std::vector<std::size_t> parent_;
  std::vector<Term> rep_;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> nodes_;
};

}  // namespace

FreeAlgebra free_algebra(const TheoryPresentation& p, std::size_t m, std::size_t guard) {
  EGraph g(p, m, guard);
  for (;;) {
    const std::vector<std::size_t> before = g.roots();
    auto check_tuples = [&](std::size_t arity) {
      if (power(before.size(), arity) > guard) {
        throw Error("theory '" + p.name + "': more than " + std::to_string(guard) +
                    " terms explored in " + std::to_string(m) +
                    " variable(s); hom-sets too large or infinite at this truncation");
      }
    };
    for (std::size_t op = 0; op < p.operations.size(); ++op) {
      const std::size_t arity = p.operations[op].arity;
      check_tuples(arity);
      const std::size_t count = power(before.size(), arity);
      for (std::size_t code = 0; code < count; ++code) {
        std::vector<std::size_t> args;
        for (std::size_t d : decode(code, before.size(), arity)) args.push_back(before[d]);
        g.add(op, args);
      }
    }
    for (const Equation& e : p.equations) {
      const std::size_t vars = std::max(e.lhs.variable_bound(), e.rhs.variable_bound());
      check_tuples(vars);
      const std::size_t count = power(before.size(), vars);
      for (std::size_t code = 0; code < count; ++code) {
        std::vector<std::size_t> assignment;
        for (std::size_t d : decode(code, before.size(), vars)) assignment.push_back(before[d]);
        g.unite(g.eval(e.lhs, assignment), g.eval(e.rhs, assignment));
      }
    }
    g.rebuild();
    const std::vector<std::size_t> after = g.roots();
    std::set<std::size_t> survivors;
    for (std::size_t r : before) survivors.insert(g.find(r));
    if (survivors.size() == before.size() && after.size() == before.size()) break;
  }

  FreeAlgebra out;
  out.variables = m;
  const std::vector<std::size_t> roots = g.roots();
  std::map<std::size_t, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    index[roots[i]] = i;
    out.representatives.push_back(g.rep(roots[i]));
    labels.push_back(to_string(g.rep(roots[i])));
  }
  out.classes = FinSet(labels);
  for (std::size_t v = 0; v < m; ++v) out.variable_class.push_back(index.at(g.find(v)));
  for (std::size_t op = 0; op < p.operations.size(); ++op) {
    const std::size_t arity = p.operations[op].arity;
    const std::size_t count = power(roots.size(), arity);
    std::vector<std::size_t> table(count);
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<std::size_t> args;
      for (std::size_t d : decode(code, roots.size(), arity)) args.push_back(roots[d]);
      table[code] = index.at(g.node(op, args));
    }
    out.tables.push_back(std::move(table));
  }
  return out;
}


// Truncated theories -----------------------------------------------------------------

namespace {

/// The class of `c` ∈ from after substituting images[i] ∈ to for x_{i+1}.
std::size_t substitute(const TheoryPresentation& p, const FreeAlgebra& from, std::size_t c,
                       const FreeAlgebra& to, const std::vector<std::size_t>& images) {
  return evaluate(
      from.representatives[c], p.operations, [&](std::size_t v) { return images[v]; },
      [&](std::size_t op, const std::vector<std::size_t>& args) { return to.apply(op, args); });
}

std::string tuple_name(const FreeAlgebra& alg, const std::vector<std::size_t>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += alg.classes.label(tuple[i]);
  }
  return out + ")";
}

constexpr std::size_t kMaxTheoryMorphisms = 100000;

}  // namespace

std::size_t TruncatedTheory::morphism(std::size_t m, const std::vector<std::size_t>& tuple) const {
  const std::size_t n = tuple.size();
  return hom_offset[m * (truncation() + 1) + n] + encode(tuple, algebras[m].size());
}

std::vector<std::size_t> TruncatedTheory::tuple(std::size_t f) const {
  const FinCategory& c = *category;
  const std::size_t m = c.src(f), n = c.dst(f);
  return decode(f - hom_offset[m * (truncation() + 1) + n], algebras[m].size(), n);
}

std::size_t TruncatedTheory::projection(std::size_t n, std::size_t i) const {
  return morphism(n, {algebras[n].variable_class[i]});
}

std::size_t TruncatedTheory::operation_morphism(std::size_t op) const {
  const std::size_t k = presentation.operations[op].arity;
  return morphism(k, {algebras[k].apply(op, algebras[k].variable_class)});
}

TruncatedTheory build_truncated_theory(const TheoryPresentation& p, std::size_t guard) {
  const ValidationReport pv = validate_presentation(p);
  if (!pv.ok()) throw Error("theory '" + p.name + "': " + pv.summary());
  TruncatedTheory t;
  t.presentation = p;
  const std::size_t top = p.truncation;
  const std::size_t n_obj = top + 1;
  for (std::size_t m = 0; m < n_obj; ++m) t.algebras.push_back(free_algebra(p, m, guard));

  std::size_t total = 0;
  for (std::size_t m = 0; m < n_obj; ++m) {
    for (std::size_t n = 0; n < n_obj; ++n) {
      const std::size_t h = power(t.algebras[m].size(), n);
      if (h == npos || total + h > kMaxTheoryMorphisms) {
        throw Error("theory '" + p.name + "': more than " + std::to_string(kMaxTheoryMorphisms) +
                    " morphisms at truncation " + std::to_string(top));
      }
      total += h;
    }
  }

  CategoryBuilder builder(p.name.empty() ? "T" : p.name, false);
  for (std::size_t m = 0; m < n_obj; ++m) builder.add_object("x^" + std::to_string(m));
  t.hom_offset.assign(n_obj * n_obj, 0);
  for (std::size_t m = 0; m < n_obj; ++m) {
    const FreeAlgebra& alg = t.algebras[m];
    for (std::size_t n = 0; n < n_obj; ++n) {
      t.hom_offset[m * n_obj + n] = builder.morphism_count();
      const std::size_t h = power(alg.size(), n);
      for (std::size_t code = 0; code < h; ++code) {
        builder.add_morphism(tuple_name(alg, decode(code, alg.size(), n)), m, n);
      }
    }
  }
  for (std::size_t m = 0; m < n_obj; ++m) {
    builder.set_identity(m, t.morphism(m, t.algebras[m].variable_class));
  }
  // g ∘ f substitutes the components of f into those of g
  for (std::size_t m = 0; m < n_obj; ++m) {
    for (std::size_t n = 0; n < n_obj; ++n) {
      const std::size_t hf = power(t.algebras[m].size(), n);
      for (std::size_t code = 0; code < hf; ++code) {
        const std::vector<std::size_t> f = decode(code, t.algebras[m].size(), n);
        const std::size_t fi = t.hom_offset[m * n_obj + n] + code;
        std::vector<std::size_t> subst(t.algebras[n].size());
        for (std::size_t c = 0; c < subst.size(); ++c) {
          subst[c] = substitute(p, t.algebras[n], c, t.algebras[m], f);
        }
        for (std::size_t k = 0; k < n_obj; ++k) {
          const std::size_t hg = power(t.algebras[n].size(), k);
          for (std::size_t gcode = 0; gcode < hg; ++gcode) {
            std::vector<std::size_t> g = decode(gcode, t.algebras[n].size(), k);
            for (std::size_t& x : g) x = subst[x];
            builder.set_composite(t.hom_offset[n * n_obj + k] + gcode, fi, t.morphism(m, g));
          }
        }
      }
    }
  }
  t.category = builder.build();
  const FinCategory& c = *t.category;

  // x^i ⋆ x^j = x^{i+j} where i + j ≤ N
  MonoidalStructure& mon = t.cartesian.monoidal;
  mon.base = t.category;
  mon.unit = 0;
  mon.tensor_obj.assign(n_obj * n_obj, npos);
  for (std::size_t i = 0; i < n_obj; ++i) {
    for (std::size_t j = 0; i + j < n_obj; ++j) mon.tensor_obj[i * n_obj + j] = i + j;
  }
  const std::size_t nm = c.morphism_count();
  // inclusions A_a → A_{a+c} along x_i ↦ x_i and x_i ↦ x_{a+i}
  auto shifted = [&](std::size_t from, std::size_t to, std::size_t offset) {
    std::vector<std::size_t> images;
    for (std::size_t i = 0; i < from; ++i) images.push_back(t.algebras[to].variable_class[offset + i]);
    return images;
  };
  mon.tensor_mor.assign(nm * nm, npos);
  for (std::size_t f = 0; f < nm; ++f) {
    const std::size_t a = c.src(f), b = c.dst(f);
    const std::vector<std::size_t> ft = t.tuple(f);
    for (std::size_t g = 0; g < nm; ++g) {
      const std::size_t cc = c.src(g), d = c.dst(g);
      if (a + cc >= n_obj || b + d >= n_obj) continue;
      const std::vector<std::size_t> left = shifted(a, a + cc, 0);
      const std::vector<std::size_t> right = shifted(cc, a + cc, a);
      std::vector<std::size_t> tuple;
      for (std::size_t x : ft) tuple.push_back(substitute(p, t.algebras[a], x, t.algebras[a + cc], left));
      for (std::size_t x : t.tuple(g)) {
        tuple.push_back(substitute(p, t.algebras[cc], x, t.algebras[a + cc], right));
      }
      mon.tensor_mor[f * nm + g] = t.morphism(a + cc, tuple);
    }
  }
  mon.associator.assign(n_obj * n_obj * n_obj, npos);
  for (std::size_t a = 0; a < n_obj; ++a) {
    for (std::size_t b = 0; b < n_obj; ++b) {
      for (std::size_t d = 0; a + b + d < n_obj; ++d) {
        mon.associator[(a * n_obj + b) * n_obj + d] = c.identity(a + b + d);
      }
    }
  }
  for (std::size_t a = 0; a < n_obj; ++a) {
    mon.left_unitor.push_back(c.identity(a));
    mon.right_unitor.push_back(c.identity(a));
  }
  t.cartesian.proj1.assign(n_obj * n_obj, npos);
  t.cartesian.proj2.assign(n_obj * n_obj, npos);
  for (std::size_t a = 0; a < n_obj; ++a) {
    for (std::size_t b = 0; a + b < n_obj; ++b) {
      t.cartesian.proj1[a * n_obj + b] = t.morphism(a + b, shifted(a, a + b, 0));
      t.cartesian.proj2[a * n_obj + b] = t.morphism(a + b, shifted(b, a + b, a));
    }
  }
  for (std::size_t a = 0; a < n_obj; ++a) t.cartesian.terminal.push_back(t.morphism(a, {}));
  return t;
}


// Models -------------------------------------------------------------------------------

namespace {

std::size_t eval_in(const TheoryPresentation& p, const Term& t,
                    const std::vector<std::vector<std::size_t>>& ops, std::size_t k,
                    const std::vector<std::size_t>& values) {
  return evaluate(
      t, p.operations, [&](std::size_t v) { return values[v]; },
      [&](std::size_t op, const std::vector<std::size_t>& args) { return ops[op][encode(args, k)]; });
}

/// The first equation instance violated by the tables, if any.
std::optional<std::string> equation_violation(const TheoryPresentation& p, std::size_t k,
                                              const std::vector<std::vector<std::size_t>>& ops) {
  for (const Equation& e : p.equations) {
    const std::size_t vars = std::max(e.lhs.variable_bound(), e.rhs.variable_bound());
    const std::size_t count = power(k, vars);
    for (std::size_t code = 0; code < count; ++code) {
      const std::vector<std::size_t> values = decode(code, k, vars);
      if (eval_in(p, e.lhs, ops, k, values) != eval_in(p, e.rhs, ops, k, values)) {
        return to_string(e.lhs) + " = " + to_string(e.rhs) + " fails";
      }
    }
  }
  return std::nullopt;
}

FinSet tuple_set(const FinSet& carrier, std::size_t n) {
  if (n == 1) return carrier;
  const std::size_t k = carrier.size();
  std::vector<std::string> labels;
  for (std::size_t code = 0; code < power(k, n); ++code) {
    std::string l = "(";
    const std::vector<std::size_t> digits = decode(code, k, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i) l += ",";
      l += carrier.label(digits[i]);
    }
    labels.push_back(l + ")");
  }
  return FinSet(labels);
}

/// Per power n, the tuple code of every element of F(x^n) through the
/// projections, and the element with each code.
struct TupleCoding {
  std::vector<std::vector<std::size_t>> code;
  std::vector<std::vector<std::size_t>> element;
};

TupleCoding tuple_coding(const TruncatedTheory& t, const SetFunctor& f) {
  TupleCoding out;
  const std::size_t k = f.sets[1].size();
  for (std::size_t n = 0; n <= t.truncation(); ++n) {
    const std::size_t size = f.sets[n].size();
    const std::size_t expected = power(k, n);
    if (size != expected) {
      throw Error("M(x^" + std::to_string(n) + ") has " + std::to_string(size) +
                  " elements, expected |M(x)|^" + std::to_string(n) + " = " +
                  std::to_string(expected));
    }
    std::vector<std::size_t> codes(size), elements(size, npos);
    for (std::size_t e = 0; e < size; ++e) {
      std::vector<std::size_t> digits;
      for (std::size_t i = 0; i < n; ++i) digits.push_back(f.maps[t.projection(n, i)](e));
      codes[e] = encode(digits, k);
      if (elements[codes[e]] != npos) {
        throw Error("M(x^" + std::to_string(n) + ") -> M(x)^" + std::to_string(n) +
                    " is not injective");
      }
      elements[codes[e]] = e;
    }
    out.code.push_back(std::move(codes));
    out.element.push_back(std::move(elements));
  }
  return out;
}

}  // namespace

TheoryModel model_from_operations(const TruncatedTheory& t, const FinSet& carrier,
                                  const std::vector<std::vector<std::size_t>>& operations) {
  const TheoryPresentation& p = t.presentation;
  const std::size_t k = carrier.size();
  if (operations.size() != p.operations.size()) throw Error("model: one table per operation");
  for (std::size_t op = 0; op < operations.size(); ++op) {
    if (operations[op].size() != power(k, p.operations[op].arity)) {
      throw Error("model: table of '" + p.operations[op].name + "' has the wrong size");
    }
    for (std::size_t v : operations[op]) {
      if (v >= k) throw Error("model: table of '" + p.operations[op].name + "' leaves the carrier");
    }
  }
  if (const auto bad = equation_violation(p, k, operations)) throw Error("model: " + *bad);

  TheoryModel out{SetFunctor{t.category, {}, {}}, carrier, operations};
  const std::size_t n_obj = t.truncation() + 1;
  for (std::size_t n = 0; n < n_obj; ++n) out.functor.sets.push_back(tuple_set(carrier, n));
  // value[m][c][v]: the class c of A_m evaluated at v ∈ M^m
  std::vector<std::vector<std::vector<std::size_t>>> value(n_obj);
  for (std::size_t m = 0; m < n_obj; ++m) {
    const FreeAlgebra& alg = t.algebras[m];
    const std::size_t size = power(k, m);
    value[m].assign(alg.size(), std::vector<std::size_t>(size));
    for (std::size_t c = 0; c < alg.size(); ++c) {
      for (std::size_t v = 0; v < size; ++v) {
        value[m][c][v] = eval_in(p, alg.representatives[c], operations, k, decode(v, k, m));
      }
    }
  }
  const FinCategory& cat = *t.category;
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const std::size_t m = cat.src(f), n = cat.dst(f);
    const std::vector<std::size_t> tuple = t.tuple(f);
    std::vector<std::size_t> table(out.functor.sets[m].size());
    for (std::size_t v = 0; v < table.size(); ++v) {
      std::vector<std::size_t> image;
      for (std::size_t c : tuple) image.push_back(value[m][c][v]);
      table[v] = encode(image, k);
    }
    out.functor.maps.emplace_back(out.functor.sets[m], out.functor.sets[n], std::move(table));
  }
  return out;
}

TheoryModel model_from_functor(const TruncatedTheory& t, const SetFunctor& f) {
  if (!same_category(f.base, t.category)) throw Error("model: functor lives on another category");
  const TupleCoding coding = tuple_coding(t, f);
  const std::size_t k = f.sets[1].size();
  TheoryModel out{f, f.sets[1], {}};
  const TheoryPresentation& p = t.presentation;
  for (std::size_t op = 0; op < p.operations.size(); ++op) {
    const std::size_t arity = p.operations[op].arity;
    const FinFunction& map = f.maps[t.operation_morphism(op)];
    std::vector<std::size_t> table(power(k, arity));
    for (std::size_t code = 0; code < table.size(); ++code) {
      table[code] = map(coding.element[arity][code]);
    }
    out.operations.push_back(std::move(table));
  }
  return out;
}

ValidationReport validate_model(const TruncatedTheory& t, const SetFunctor& f) {
  ValidationReport r;
  if (!same_category(f.base, t.category)) {
    r.add("functor lives on another category");
    return r;
  }
  r.merge(validate_set_functor(f));
  if (!r.ok()) return r;
  const SetCanonicalConstraints c = set_constraints_from_cartesian(f, t.cartesian);
  if (!c.strong) r.add("not product-preserving: " + c.detail);
  r.notes.push_back("products checked on x^i * x^j with i + j <= " +
                    std::to_string(t.truncation()));
  return r;
}

std::vector<TheoryModel> enumerate_models(const TruncatedTheory& t, std::size_t max_carrier,
                                          std::size_t limit) {
  const TheoryPresentation& p = t.presentation;
  std::vector<TheoryModel> out;
  std::size_t explored = 0;
  for (std::size_t k = 0; k <= max_carrier; ++k) {
    // all operation tables at once, as one odometer over their concatenation
    std::vector<std::size_t> sizes;
    std::size_t width = 0;
    for (const Operation& o : p.operations) {
      sizes.push_back(power(k, o.arity));
      width += sizes.back();
    }
    if (k == 0 && width > 0) continue;
    std::vector<std::size_t> digits(width, 0);
    for (;;) {
      if (++explored > limit) {
        throw Error("enumerate_models: more than " + std::to_string(limit) + " candidates");
      }
      std::vector<std::vector<std::size_t>> ops;
      std::size_t at = 0;
      for (std::size_t size : sizes) {
        ops.emplace_back(digits.begin() + static_cast<std::ptrdiff_t>(at),
                         digits.begin() + static_cast<std::ptrdiff_t>(at + size));
        at += size;
      }
      if (!equation_violation(p, k, ops)) out.push_back(model_from_operations(t, FinSet::range(k), ops));
      std::size_t i = width;
      while (i > 0 && ++digits[i - 1] == k) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

std::vector<SetTransformation> model_morphisms(const TruncatedTheory& t, const TheoryModel& m,
                                               const TheoryModel& x, std::size_t limit) {
  const TheoryPresentation& p = t.presentation;
  const TupleCoding cm = tuple_coding(t, m.functor);
  const TupleCoding cx = tuple_coding(t, x.functor);
  const std::size_t km = m.carrier.size(), kx = x.carrier.size();
  std::vector<SetTransformation> out;
  for (const FinFunction& h : all_functions(m.carrier, x.carrier, limit)) {
    bool homomorphism = true;
    for (std::size_t op = 0; op < p.operations.size() && homomorphism; ++op) {
      const std::size_t arity = p.operations[op].arity;
      for (std::size_t code = 0; code < power(km, arity) && homomorphism; ++code) {
        std::vector<std::size_t> args = decode(code, km, arity);
        const std::size_t lhs = h(m.operations[op][code]);
        for (std::size_t& a : args) a = h(a);
        homomorphism = lhs == x.operations[op][encode(args, kx)];
      }
    }
    if (!homomorphism) continue;
    SetTransformation alpha;
    for (std::size_t n = 0; n <= t.truncation(); ++n) {
      std::vector<std::size_t> table(m.functor.sets[n].size());
      for (std::size_t e = 0; e < table.size(); ++e) {
        std::vector<std::size_t> digits = decode(cm.code[n][e], km, n);
        for (std::size_t& d : digits) d = h(d);
        table[e] = cx.element[n][encode(digits, kx)];
      }
      alpha.components.emplace_back(m.functor.sets[n], x.functor.sets[n], std::move(table));
    }
    const ValidationReport v = validate_transformation(m.functor, x.functor, alpha);
    if (!v.ok()) throw Error("model_morphisms: homomorphism is not natural: " + v.summary());
    out.push_back(std::move(alpha));
  }
  return out;
}

std::optional<std::vector<std::size_t>> model_isomorphism(const TruncatedTheory& t,
                                                          const TheoryModel& a,
                                                          const TheoryModel& b) {
  const std::size_t k = a.carrier.size();
  if (b.carrier.size() != k) return std::nullopt;
  const TheoryPresentation& p = t.presentation;
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t op = 0; op < p.operations.size() && ok; ++op) {
      const std::size_t arity = p.operations[op].arity;
      for (std::size_t code = 0; code < power(k, arity) && ok; ++code) {
        std::vector<std::size_t> args = decode(code, k, arity);
        for (std::size_t& x : args) x = perm[x];
        ok = perm[a.operations[op][code]] == b.operations[op][encode(args, k)];
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Algebraic functors and their adjoints ---------------------------------------------------

CatFunctor theory_morphism(const TruncatedTheory& from, const TruncatedTheory& to,
                           const std::vector<Term>& interpretation) {
  const TheoryPresentation& p = from.presentation;
  const TheoryPresentation& q = to.presentation;
  if (from.truncation() > to.truncation()) {
    throw Error("theory_morphism: target truncated below the source");
  }
  if (interpretation.size() != p.operations.size()) {
    throw Error("theory_morphism: one term per operation of '" + p.name + "' required");
  }
  for (std::size_t op = 0; op < interpretation.size(); ++op) {
    ValidationReport r;
    check_term(interpretation[op], q.operations, r, "interpretation of " + p.operations[op].name);
    if (!r.ok()) throw Error("theory_morphism: " + r.summary());
    if (interpretation[op].variable_bound() > p.operations[op].arity) {
      throw Error("theory_morphism: interpretation of '" + p.operations[op].name +
                  "' uses too many variables");
    }
  }
  const std::size_t n_obj = from.truncation() + 1;
  // the derived operations of `from` on the free algebras of `to`
  auto derived = [&](const FreeAlgebra& alg) {
    return [&](std::size_t op, const std::vector<std::size_t>& args) {
      return evaluate(
          interpretation[op], q.operations, [&](std::size_t v) { return args[v]; },
          [&](std::size_t o, const std::vector<std::size_t>& a) { return alg.apply(o, a); });
    };
  };
  for (std::size_t m = 0; m < n_obj; ++m) {
    const FreeAlgebra& alg = to.algebras[m];
    for (const Equation& e : p.equations) {
      const std::size_t vars = std::max(e.lhs.variable_bound(), e.rhs.variable_bound());
      const std::size_t count = power(alg.size(), vars);
      for (std::size_t code = 0; code < count; ++code) {
        const std::vector<std::size_t> values = decode(code, alg.size(), vars);
        auto var = [&](std::size_t v) { return values[v]; };
        if (evaluate(e.lhs, p.operations, var, derived(alg)) !=
            evaluate(e.rhs, p.operations, var, derived(alg))) {
          throw Error("theory_morphism: " + to_string(e.lhs) + " = " + to_string(e.rhs) +
                      " fails in '" + q.name + "'");
        }
      }
    }
  }
  CatFunctor out{from.category, to.category, {}, {}};
  for (std::size_t n = 0; n < n_obj; ++n) out.obj.push_back(n);
  std::vector<std::vector<std::size_t>> translate(n_obj);
  for (std::size_t m = 0; m < n_obj; ++m) {
    const FreeAlgebra& alg = to.algebras[m];
    for (const Term& rep : from.algebras[m].representatives) {
      translate[m].push_back(evaluate(
          rep, p.operations, [&](std::size_t v) { return alg.variable_class[v]; }, derived(alg)));
    }
  }
  const FinCategory& c = *from.category;
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    std::vector<std::size_t> tuple = from.tuple(f);
    for (std::size_t& x : tuple) x = translate[c.src(f)][x];
    out.mor.push_back(to.morphism(c.src(f), tuple));
  }
  return out;
}

TheoryModel algebraic_functor(const CatFunctor& theta, const TruncatedTheory& from,
                              const TruncatedTheory& to, const TheoryModel& x) {
  const CanonicalConstraints tc = constraints_from_cartesian(theta, from.cartesian, to.cartesian);
  if (!tc.strong) throw Error("algebraic_functor: theta is not product-preserving: " + tc.detail);
  const SetFunctor u = precompose(x.functor, theta);
  const ValidationReport v = validate_model(from, u);
  if (!v.ok()) throw Error("algebraic_functor: " + v.summary());
  return model_from_functor(from, u);
}

FreeModelResult free_model(const CatFunctor& theta, const TruncatedTheory& from,
                           const TruncatedTheory& to, const TheoryModel& m) {
  FreeModelResult out{pointwise_lan(theta, m.functor), std::nullopt, "", {}};
  const ValidationReport v = validate_model(to, out.lan.lan);
  if (v.ok()) {
    out.model = model_from_functor(to, out.lan.lan);
  } else {
    out.failure = v.summary();
  }
  out.theorem = main_theorem_check(theta, from.cartesian, to.cartesian, m.functor);
  return out;
}

namespace {

/// β ↦ βθ ∘ η
SetTransformation transpose(const CatFunctor& theta, const LanResult& lan,
                            const SetTransformation& beta) {
  SetTransformation out;
  for (std::size_t a = 0; a < theta.dom->object_count(); ++a) {
    out.components.push_back(compose(beta.components[theta.on_object(a)], lan.unit[a]));
  }
  return out;
}

bool same(const SetTransformation& a, const SetTransformation& b) {
  return a.components == b.components;
}

SetTransformation vertical(const SetTransformation& second, const SetTransformation& first) {
  SetTransformation out;
  for (std::size_t i = 0; i < first.components.size(); ++i) {
    out.components.push_back(compose(second.components[i], first.components[i]));
  }
  return out;
}

/// Lan_θ u : Lan_θ M' ⇒ Lan_θ M
SetTransformation lan_on_morphism(const LanResult& from, const LanResult& to,
                                  const SetTransformation& u) {
  SetTransformation out;
  for (std::size_t y = 0; y < from.colimits.size(); ++y) {
    const ColimitObject& target = to.colimits[y];
    out.components.push_back(colimit_factorize(
        from.colimits[y], target.carrier, [&](std::size_t x, std::size_t w, std::size_t v) {
          return target.coproject(x, w, u.components[x](v));
        }));
  }
  return out;
}

}  // namespace

AdjunctionReport adjunction_check(const CatFunctor& theta, const TruncatedTheory& from,
                                  const TruncatedTheory& to,
                                  const std::vector<TheoryModel>& models_from,
                                  const std::vector<TheoryModel>& models_to) {
  AdjunctionReport r;
  std::vector<LanResult> lans;
  std::vector<TheoryModel> free;
  for (const TheoryModel& m : models_from) {
    lans.push_back(pointwise_lan(theta, m.functor));
    const ValidationReport v = validate_model(to, lans.back().lan);
    if (!v.ok()) {
      r.detail = "Lan of a model is not a model: " + v.summary();
      return r;
    }
    free.push_back(model_from_functor(to, lans.back().lan));
  }
  std::vector<TheoryModel> under;
  for (const TheoryModel& x : models_to) under.push_back(algebraic_functor(theta, from, to, x));

  // hom[i][j] = Hom(Lan M_i, X_j)
  std::vector<std::vector<std::vector<SetTransformation>>> hom(free.size());
  bool bijective = true;
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = 0; j < models_to.size(); ++j) {
      hom[i].push_back(model_morphisms(to, free[i], models_to[j]));
      const std::vector<SetTransformation> right = model_morphisms(from, models_from[i], under[j]);
      ++r.pairs;
      r.morphisms += hom[i][j].size();
      std::vector<bool> hit(right.size(), false);
      for (const SetTransformation& beta : hom[i][j]) {
        const SetTransformation t = transpose(theta, lans[i], beta);
        std::size_t found = npos;
        for (std::size_t k = 0; k < right.size() && found == npos; ++k) {
          if (same(t, right[k])) found = k;
        }
        if (found == npos || hit[found]) {
          if (bijective) {
            r.detail = "model pair (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                       (found == npos ? "transpose is not a model morphism" : "two morphisms share a transpose");
          }
          bijective = false;
          continue;
        }
        hit[found] = true;
      }
      if (bijective && std::find(hit.begin(), hit.end(), false) != hit.end()) {
        r.detail = "model pair (" + std::to_string(i) + "," + std::to_string(j) +
                   "): a morphism M -> U X has no preimage";
        bijective = false;
      }
    }
  }
  r.bijective = bijective;

  bool natural = true;
  // in M: transpose(β ∘ Lan u) = transpose(β) ∘ u
  for (std::size_t i2 = 0; i2 < models_from.size() && natural; ++i2) {
    for (std::size_t i = 0; i < models_from.size() && natural; ++i) {
      for (const SetTransformation& u : model_morphisms(from, models_from[i2], models_from[i])) {
        const SetTransformation lu = lan_on_morphism(lans[i2], lans[i], u);
        for (std::size_t j = 0; j < models_to.size() && natural; ++j) {
          for (const SetTransformation& beta : hom[i][j]) {
            ++r.naturality_squares;
            if (!same(transpose(theta, lans[i2], vertical(beta, lu)),
                      vertical(transpose(theta, lans[i], beta), u))) {
              natural = false;
              r.detail = "bijection is not natural in the first model (" + std::to_string(i2) +
                         " -> " + std::to_string(i) + ")";
              break;
            }
          }
        }
        if (!natural) break;
      }
    }
  }
  // in X: transpose(v ∘ β) = vθ ∘ transpose(β)
  for (std::size_t j = 0; j < models_to.size() && natural; ++j) {
    for (std::size_t j2 = 0; j2 < models_to.size() && natural; ++j2) {
      for (const SetTransformation& v : model_morphisms(to, models_to[j], models_to[j2])) {
        SetTransformation vt;
        for (std::size_t a = 0; a < theta.dom->object_count(); ++a) {
          vt.components.push_back(v.components[theta.on_object(a)]);
        }
        for (std::size_t i = 0; i < free.size() && natural; ++i) {
          for (const SetTransformation& beta : hom[i][j]) {
            ++r.naturality_squares;
            if (!same(transpose(theta, lans[i], vertical(v, beta)),
                      vertical(vt, transpose(theta, lans[i], beta)))) {
              natural = false;
              r.detail = "bijection is not natural in the second model (" + std::to_string(j) +
                         " -> " + std::to_string(j2) + ")";
              break;
            }
          }
        }
        if (!natural) break;
      }
    }
  }
  r.natural = natural;
  return r;
}

}  // namespace kanext
