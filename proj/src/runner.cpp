#include "kanext/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "kanext/fixtures.hpp"
#include "kanext/kan.hpp"

namespace kanext {

namespace {

using Clock = std::chrono::steady_clock;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string indexed(const std::string& prefix, std::size_t i) { return prefix + "." + std::to_string(i + 1); }

void add_validation(Record& r, const ValidationReport& v, const std::string& prefix = "") {
  r.add(prefix + "violations", std::to_string(v.total));
  for (std::size_t i = 0; i < v.violations.size() && i < 5; ++i) r.add(indexed(prefix + "violation", i), v.violations[i]);
  for (std::size_t i = 0; i < v.notes.size(); ++i) r.add(indexed(prefix + "note", i), v.notes[i]);
  if (!v.ok()) r.fail(prefix + v.violations.front());
}

std::string link_text(const LinkResult& l) {
  if (!l.computed) return "not-computed" + (l.detail.empty() ? "" : " (" + l.detail + ")");
  std::string out = (l.invertible ? "invertible" : "not-invertible") + std::string(" instances=") +
                    std::to_string(l.instances);
  if (!l.invertible) out += " at " + l.detail;
  return out;
}

void add_theorem(Record& r, const TheoremReport& t, const std::string& prefix = "") {
  for (std::size_t i = 0; i < t.precondition_failures.size(); ++i) {
    r.add(indexed(prefix + "precondition", i), t.precondition_failures[i]);
  }
  for (const LinkResult& l : t.links) r.add(prefix + "link." + l.name, link_text(l));
  for (const LinkResult& l : t.unit_links) r.add(prefix + "unit-link." + l.name, link_text(l));
  r.add(prefix + "composite", t.composite_matches_canonical ? "matches-canonical" : "mismatch " + t.composite_detail);
  r.add(prefix + "naturality", t.natural ? "natural" : "not-natural " + t.naturality_detail);
  r.add(prefix + "well-defined", yes_no(t.well_defined));
  r.add(prefix + "canonical-strong",
        t.canonical_strong ? "yes" : "no" + (t.canonical_detail.empty() ? "" : " " + t.canonical_detail));
  r.add(prefix + "pairs", "checked=" + std::to_string(t.pairs_checked) + " skipped=" + std::to_string(t.pairs_skipped));
  for (std::size_t i = 0; i < t.notes.size(); ++i) r.add(indexed(prefix + "note", i), t.notes[i]);
  if (!t.ok()) r.fail(prefix + t.first_failure());
}

/// Folds `next` into `into`: a link stays invertible only if it is everywhere,
/// and the first failing instance is cited with `where`.
void merge_theorem(TheoremReport& into, const TheoremReport& next, const std::string& where, bool first) {
  if (first) {
    into = next;
    for (auto& p : into.precondition_failures) p = where + ": " + p;
    for (auto* group : {&into.links, &into.unit_links}) {
      for (LinkResult& l : *group) {
        if (!l.invertible || !l.computed) l.detail = where + ": " + l.detail;
      }
    }
    if (!into.composite_matches_canonical) into.composite_detail = where + ": " + into.composite_detail;
    if (!into.natural) into.naturality_detail = where + ": " + into.naturality_detail;
    if (!into.canonical_strong) into.canonical_detail = where + ": " + into.canonical_detail;
    return;
  }
  for (const auto& p : next.precondition_failures) into.precondition_failures.push_back(where + ": " + p);
  auto merge_links = [&](std::vector<LinkResult>& a, const std::vector<LinkResult>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      const bool was_good = a[i].computed && a[i].invertible;
      a[i].instances += b[i].instances;
      if (was_good && !(b[i].computed && b[i].invertible)) a[i].detail = where + ": " + b[i].detail;
      a[i].computed = a[i].computed && b[i].computed;
      a[i].invertible = a[i].invertible && b[i].invertible;
    }
  };
  merge_links(into.links, next.links);
  merge_links(into.unit_links, next.unit_links);
  if (into.composite_matches_canonical && !next.composite_matches_canonical) {
    into.composite_detail = where + ": " + next.composite_detail;
  }
  into.composite_matches_canonical = into.composite_matches_canonical && next.composite_matches_canonical;
  if (into.natural && !next.natural) into.naturality_detail = where + ": " + next.naturality_detail;
  into.natural = into.natural && next.natural;
  into.well_defined = into.well_defined && next.well_defined;
  if (into.canonical_strong && !next.canonical_strong) into.canonical_detail = where + ": " + next.canonical_detail;
  into.canonical_strong = into.canonical_strong && next.canonical_strong;
  into.pairs_checked += next.pairs_checked;
  into.pairs_skipped += next.pairs_skipped;
  for (const auto& n : next.notes) {
    if (std::find(into.notes.begin(), into.notes.end(), n) == into.notes.end()) into.notes.push_back(n);
  }
}

std::string indicator_name(const SetFunctor& f) {
  std::string out = "indicator{";
  bool first = true;
  for (std::size_t a = 0; a < f.sets.size(); ++a) {
    if (f.sets[a].empty()) continue;
    out += (first ? "" : ",") + f.base->object(a);
    first = false;
  }
  return out + "}";
}

std::string sets_text(const FinCategory& c, const std::vector<FinSet>& sets) {
  std::string out;
  for (std::size_t a = 0; a < sets.size(); ++a) out += (a ? " " : "") + c.object(a) + "=" + to_string(sets[a]);
  return out;
}

const CartesianStructure& cartesian_on(const SpecFile& spec, const CatRef& c) {
  const CartesianStructure* s = spec.cartesian_for(c);
  if (!s) throw Error("no cartesian structure is declared for " + c->name());
  return *s;
}

/// A set-valued functor on `base`: declared on it, or a weight on its opposite.
SetFunctor functor_on(const SpecFile& spec, const std::string& name, const CatRef& base) {
  if (spec.set_functors.contains(name)) {
    const SetFunctor& f = spec.set_functors.at(name);
    if (!same_category(f.base, base)) throw Error(name + " does not live on " + base->name());
    return f;
  }
  const Weight& w = spec.weights.at(name);
  if (!same_category(opposite(w.base), base)) throw Error(name + " is not a weight on the opposite of " + base->name());
  return SetFunctor{base, w.sets, w.maps};
}

std::string operation_text(const TruncatedTheory& t, const TheoryModel& m) {
  std::string out;
  const auto& ops = t.presentation.operations;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    out += (k ? " " : "") + ops[k].name + "=[";
    for (std::size_t i = 0; i < m.operations[k].size(); ++i) {
      out += (i ? "," : "") + m.carrier.label(m.operations[k][i]);
    }
    out += "]";
  }
  return out;
}

struct TheoryPair {
  const TruncatedTheory* from = nullptr;
  const TruncatedTheory* to = nullptr;
  CatFunctor theta;
  std::shared_ptr<TruncatedTheory> owned;  // the theory of sets, when built here
};

/// A theory T stands for the morphism from the theory of sets into T.
TheoryPair theory_pair(const SpecFile& spec, const std::string& name) {
  TheoryPair p;
  if (spec.theory_morphisms.contains(name)) {
    const TheoryMorphismEntry& e = spec.theory_morphisms.at(name);
    p.from = &spec.theories.at(e.from);
    p.to = &spec.theories.at(e.to);
    p.theta = e.functor;
    return p;
  }
  p.to = &spec.theories.at(name);
  p.owned = std::make_shared<TruncatedTheory>(
      build_truncated_theory(TheoryPresentation{"sets", {}, {}, p.to->presentation.truncation}));
  p.from = p.owned.get();
  p.theta = theory_morphism(*p.from, *p.to, {});
  return p;
}

std::size_t key_value(const std::vector<std::string>& words, std::size_t i, std::size_t fallback) {
  if (i >= words.size()) return fallback;
  const std::string v = words[i].substr(words[i].find('=') + 1);
  if (v.empty() || v.size() > 6 || !std::all_of(v.begin(), v.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    throw Error("expected a number in '" + words[i] + "'");
  }
  return std::stoul(v);
}

// Commands ---------------------------------------------------------------------------

void run_validate(const SpecFile& spec, const std::string& name, Record& r, const RunOptions& options) {
  const std::string kind = spec.kind_of(name);
  r.add("kind", kind);
  if (kind == "set") {
    r.add("size", std::to_string(spec.sets.at(name).size()));
    add_validation(r, ValidationReport{});
  } else if (kind == "category") {
    const FinCategory& c = *spec.categories.at(name);
    r.add("objects", std::to_string(c.object_count()));
    r.add("morphisms", std::to_string(c.morphism_count()));
    add_validation(r, validate_category(c));
  } else if (kind == "functor") {
    add_validation(r, validate_functor(spec.functors.at(name)));
  } else if (kind == "set-functor") {
    const SetFunctor& f = spec.set_functors.at(name);
    r.add("sets", sets_text(*f.base, f.sets));
    add_validation(r, validate_set_functor(f));
  } else if (kind == "weight") {
    const Weight& w = spec.weights.at(name);
    r.add("sets", sets_text(*w.base, w.sets));
    add_validation(r, validate_weight(w));
  } else if (kind == "nat-trans") {
    const NatTransEntry& e = spec.nat_trans.at(name);
    add_validation(r, validate_transformation(spec.set_functors.at(e.src), spec.set_functors.at(e.dst), e.alpha));
  } else if (kind == "monoidal") {
    add_validation(r, validate_monoidal(spec.monoidal.at(name)));
  } else if (kind == "cartesian") {
    add_validation(r, validate_cartesian(spec.cartesian.at(name).structure));
  } else if (kind == "promonoidal") {
    const PromonoidalStructure& p = spec.promonoidal.at(name);
    add_validation(r, validate_promonoidal(p, functor_fixtures(p.base, std::min<std::size_t>(options.max_size, 2))));
  } else if (kind == "module") {
    const ModuleEntry& m = spec.modules.at(name);
    r.add("strong", yes_no(m.module.strong));
    add_validation(r, validate_promonoidal_module(m.module, m.source, m.target));
  } else if (kind == "theory") {
    const TruncatedTheory& t = spec.theories.at(name);
    std::string sizes;
    for (std::size_t m = 0; m < t.algebras.size(); ++m) {
      sizes += (m ? " " : "") + std::to_string(m) + ":" + std::to_string(t.algebras[m].classes.size());
    }
    r.add("truncation", std::to_string(t.presentation.truncation));
    r.add("free-algebra-sizes", sizes);
    ValidationReport v = validate_presentation(t.presentation);
    v.merge(validate_category(*t.category), "category: ");
    v.merge(validate_cartesian(t.cartesian), "cartesian: ");
    add_validation(r, v);
  } else if (kind == "theory-morphism") {
    add_validation(r, validate_functor(spec.theory_morphisms.at(name).functor));
  } else {
    throw Error("unknown name " + name);
  }
}

void run_derive(const SpecFile& spec, const std::string& name, Record& r) {
  const CatRef& c = spec.categories.at(name);
  const CartesianSearch found = derive_cartesian(c);
  if (!found.structure) {
    r.add("cartesian", "no");
    r.fail(found.failure);
    return;
  }
  const CartesianStructure& s = *found.structure;
  const std::size_t n = c->object_count();
  r.add("cartesian", "yes");
  r.add("terminal", c->object(s.monoidal.unit));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      r.add("product." + c->object(a) + "*" + c->object(b),
            c->object(s.monoidal.tensor(a, b)) + " via " + c->label(s.p1(a, b)) + ", " + c->label(s.p2(a, b)));
    }
  }
  add_validation(r, validate_cartesian(s));
}

void run_lan(const SpecFile& spec, const Command& cmd, Record& r) {
  const CatFunctor& j = spec.functors.at(cmd.words[1]);
  const SetFunctor& f = spec.set_functors.at(cmd.words[2]);
  const LanResult lan = pointwise_lan(j, f);
  const FinCategory& b = *j.cod;
  for (std::size_t y = 0; y < b.object_count(); ++y) r.add("lan." + b.object(y), to_string(lan.lan.sets[y]));
  for (std::size_t m = 0; m < b.morphism_count(); ++m) {
    if (!b.is_identity(m)) r.add("lan." + b.label(m), to_string(lan.lan.maps[m]));
  }
  for (std::size_t x = 0; x < j.dom->object_count(); ++x) r.add("unit." + j.dom->object(x), to_string(lan.unit[x]));
  add_validation(r, validate_set_functor(lan.lan));
}

void run_convolve(const SpecFile& spec, const Command& cmd, Record& r) {
  const PromonoidalStructure& p = spec.promonoidal.at(cmd.words[3]);
  const SetFunctor m = functor_on(spec, cmd.words[1], p.base);
  const SetFunctor n = functor_on(spec, cmd.words[2], p.base);
  const ConvolutionResult conv = day_convolve(m, n, p);
  const FinCategory& c = *p.base;
  for (std::size_t a = 0; a < c.object_count(); ++a) r.add("result." + c.object(a), to_string(conv.result.sets[a]));
  add_validation(r, validate_set_functor(conv.result));
}

void run_coyoneda(const SpecFile& spec, const Command& cmd, Record& r) {
  const SetFunctor& f = spec.set_functors.at(cmd.words[2]);
  std::vector<std::size_t> objects;
  if (cmd.words.size() == 4) {
    objects.push_back(f.base->object_index(cmd.words[3]));
  } else {
    for (std::size_t a = 0; a < f.base->object_count(); ++a) objects.push_back(a);
  }
  for (std::size_t a : objects) {
    const IsoWitness iso = coyoneda_check(f, a);
    const std::string key = "bijection." + f.base->object(a);
    if (iso.ok && iso.forward) {
      r.add(key, to_string(*iso.forward));
    } else {
      r.add(key, "none");
      r.fail("at " + f.base->object(a) + ": " + iso.detail);
    }
  }
}

std::string fubini_fields(Record& r, const FubiniResult& fr, const std::string& prefix) {
  r.add(prefix + "iterated", std::to_string(fr.iterated.carrier.size()));
  r.add(prefix + "joint", std::to_string(fr.joint.carrier.size()));
  if (fr.iso.ok && fr.iso.forward) {
    r.add(prefix + "bijection", to_string(*fr.iso.forward));
    return "";
  }
  return fr.iso.detail;
}

void run_fubini_random(std::size_t count, Record& r, const RunOptions& options) {
  std::mt19937_64 rng(options.seed);
  r.add("seed", std::to_string(options.seed));
  r.add("instances", std::to_string(count));
  std::size_t passed = 0;
  std::string failure;
  for (std::size_t i = 0; i < count; ++i) {
    const FubiniInstance inst = random_fubini_instance(rng);
    const FubiniResult fr = fubini_check(inst.w1, inst.w2, inst.f);
    if (fr.iso.ok) {
      ++passed;
    } else if (failure.empty()) {
      failure = "instance " + std::to_string(i + 1) + " (" + inst.description + "): " + fr.iso.detail;
    }
  }
  r.add("passed", std::to_string(passed));
  if (!failure.empty()) r.fail(failure);
}

void run_fubini(const SpecFile& spec, const Command& cmd, Record& r, const RunOptions& options) {
  if (cmd.words[2] == "random") {
    run_fubini_random(key_value(cmd.words, 3, 100), r, options);
    return;
  }
  const FubiniResult fr = fubini_check(spec.weights.at(cmd.words[2]), spec.weights.at(cmd.words[3]),
                                       spec.set_functors.at(cmd.words[4]));
  const std::string failure = fubini_fields(r, fr, "");
  if (!failure.empty()) r.fail(failure);
}

void run_mates(const SpecFile& spec, const Command& cmd, Record& r) {
  const CatFunctor& s = spec.functors.at(cmd.words[2]);
  const CatFunctor& t = spec.functors.at(cmd.words[3]);
  const std::optional<Adjunction> adj = verify_adjunction(s, t);
  if (!adj) {
    r.add("adjunction", "none");
    r.fail("precondition: " + cmd.words[2] + " is not left adjoint to " + cmd.words[3]);
    return;
  }
  r.add("adjunction", "found");
  const MatesResult m = mates_check(spec.weights.at(cmd.words[4]), spec.set_functors.at(cmd.words[5]), *adj);
  r.add("composed", std::to_string(m.composed_functor.carrier.size()));
  r.add("reindexed", std::to_string(m.reindexed_weight.carrier.size()));
  if (m.iso.ok && m.iso.forward) {
    r.add("bijection", to_string(*m.iso.forward));
  } else {
    r.fail("link mates: " + m.iso.detail);
  }
}

void run_main_theorem(const SpecFile& spec, const Command& cmd, Record& r) {
  const CatFunctor& j = spec.functors.at(cmd.words[2]);
  const CartesianStructure& a = cartesian_on(spec, j.dom);
  const CartesianStructure& b = cartesian_on(spec, j.cod);
  std::vector<std::pair<std::string, SetFunctor>> fs;
  if (cmd.words.size() == 4) {
    fs.emplace_back(cmd.words[3], spec.set_functors.at(cmd.words[3]));
  } else {
    for (SetFunctor& f : filter_indicators(a)) {
      std::string name = indicator_name(f);
      fs.emplace_back(std::move(name), std::move(f));
    }
  }
  r.add("functors", std::to_string(fs.size()));
  TheoremReport agg;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    merge_theorem(agg, main_theorem_check(j, a, b, fs[i].second), fs[i].first, i == 0);
  }
  add_theorem(r, agg);
}

void run_pointwise(const SpecFile& spec, const Command& cmd, Record& r) {
  const CartesianStructure& cart = spec.cartesian.at(cmd.words[2]).structure;
  const PromonoidalStructure p = promonoidal_from_monoidal(cart);
  const SetFunctor m = functor_on(spec, cmd.words[3], p.base);
  const SetFunctor n = functor_on(spec, cmd.words[4], p.base);
  const ConvolutionResult conv = day_convolve(m, n, p);
  const SetTransformation t = convolution_to_pointwise(conv, cart, m, n);
  const FinCategory& c = *cart.base();
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    const IsoWitness iso = iso_from_map(t.components[a]);
    if (iso.ok) {
      r.add("component." + c.object(a), to_string(t.components[a]));
    } else {
      r.add("component." + c.object(a), "not-invertible");
      r.fail("component " + c.object(a) + ": " + iso.detail);
    }
  }
  add_validation(r, validate_transformation(conv.result, pointwise_product(m, n), t), "natural.");
}

void run_exists_k(const SpecFile& spec, const Command& cmd, Record& r) {
  const ModuleEntry& m = spec.modules.at(cmd.words[2]);
  const SetFunctor f1 = functor_on(spec, cmd.words[3], m.source.base);
  const SetFunctor f2 = functor_on(spec, cmd.words[4], m.source.base);
  r.add("module-strong", yes_no(m.module.strong));
  add_theorem(r, theorem_hit_check(m.module, f1, f2, m.source, m.target));
}

void run_corollary3(const SpecFile& spec, const Command& cmd, Record& r) {
  const CartesianStructure& cart = spec.cartesian.at(cmd.words[2]).structure;
  add_theorem(r, corollary3_check(spec.set_functors.at(cmd.words[3]), cart, spec.weights.at(cmd.words[4]),
                                  spec.weights.at(cmd.words[5])));
}

void add_corollary4(Record& r, const Corollary4Report& c4, const std::string& prefix) {
  r.add(prefix + "routes-agree", c4.routes_agree ? "yes" : "no " + c4.agreement_detail);
  r.add(prefix + "verdicts-agree", yes_no(c4.verdicts_agree));
  add_theorem(r, c4.direct, prefix + "direct.");
  add_theorem(r, c4.nerve, prefix + "nerve.");
  if (!c4.routes_agree) r.fail(prefix + "routes disagree: " + c4.agreement_detail);
  if (!c4.verdicts_agree) r.fail(prefix + "verdicts disagree");
}

void run_corollary4(const SpecFile& spec, const Command& cmd, Record& r) {
  const CatFunctor& j = spec.functors.at(cmd.words[2]);
  add_corollary4(r, corollary4_check(j, cartesian_on(spec, j.dom), cartesian_on(spec, j.cod),
                                     spec.set_functors.at(cmd.words[3])),
                 "");
}

void run_theory(const SpecFile& spec, const Command& cmd, Record& r, const RunOptions& options) {
  const std::string& action = cmd.words[1];
  if (action == "models") {
    const TruncatedTheory& t = spec.theories.at(cmd.words[2]);
    const std::size_t max = key_value(cmd.words, 3, options.max_size);
    const std::vector<TheoryModel> models = enumerate_models(t, max);
    std::vector<std::size_t> counts(max + 1, 0);
    ValidationReport v;
    for (const TheoryModel& m : models) {
      ++counts[m.carrier.size()];
      v.merge(validate_model(t, m.functor));
    }
    r.add("max", std::to_string(max));
    r.add("models", std::to_string(models.size()));
    for (std::size_t k = 0; k <= max; ++k) r.add("carrier-" + std::to_string(k), std::to_string(counts[k]));
    add_validation(r, v);
    return;
  }
  const TheoryPair tp = theory_pair(spec, cmd.words[2]);
  const std::vector<TheoryModel> targets = enumerate_models(*tp.to, options.max_size);
  if (action == "free-model") {
    const std::size_t s = key_value(cmd.words, 3, 0);
    std::vector<TheoryModel> sources;
    for (TheoryModel& m : enumerate_models(*tp.from, s)) {
      if (m.carrier.size() == s) sources.push_back(std::move(m));
    }
    r.add("source-models", std::to_string(sources.size()));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const std::string prefix = sources.size() == 1 ? "free." : indexed("free", i) + ".";
      const FreeModelResult fm = free_model(tp.theta, *tp.from, *tp.to, sources[i]);
      if (!fm.model) {
        r.add(prefix + "model", "none");
        r.fail(prefix + fm.failure);
        continue;
      }
      r.add(prefix + "size", std::to_string(fm.model->carrier.size()));
      r.add(prefix + "carrier", to_string(fm.model->carrier));
      if (!tp.to->presentation.operations.empty()) r.add(prefix + "operations", operation_text(*tp.to, *fm.model));
      r.add(prefix + "strong-monoidal", fm.theorem.ok() ? "yes" : "no " + fm.theorem.first_failure());
    }
    const AdjunctionReport adj = adjunction_check(tp.theta, *tp.from, *tp.to, sources, targets);
    r.add("adjunction", adj.ok() ? "pass" : "fail");
    r.add("adjunction.targets", std::to_string(targets.size()));
    r.add("adjunction.morphisms", std::to_string(adj.morphisms));
    r.add("adjunction.squares", std::to_string(adj.naturality_squares));
    if (!adj.ok()) r.fail("adjunction: " + adj.detail);
    return;
  }
  // adjunction
  const std::size_t max = key_value(cmd.words, 3, options.max_size);
  const std::vector<TheoryModel> sources = enumerate_models(*tp.from, max);
  const std::vector<TheoryModel> to_models = max == options.max_size ? targets : enumerate_models(*tp.to, max);
  const AdjunctionReport adj = adjunction_check(tp.theta, *tp.from, *tp.to, sources, to_models);
  r.add("max", std::to_string(max));
  r.add("source-models", std::to_string(sources.size()));
  r.add("target-models", std::to_string(to_models.size()));
  r.add("pairs", std::to_string(adj.pairs));
  r.add("morphisms", std::to_string(adj.morphisms));
  r.add("squares", std::to_string(adj.naturality_squares));
  r.add("bijective", yes_no(adj.bijective));
  r.add("natural", yes_no(adj.natural));
  if (!adj.ok()) r.fail(adj.detail);
}

std::string tag_of(const Command& cmd) {
  const auto& w = cmd.words;
  if (w[0] == "check") return w[1];
  if (w[0] == "theory") return w[1] == "models" ? "theory-models" : "lawvere-adjunction";
  return w[0];
}

void dispatch(const SpecFile& spec, const Command& cmd, Record& r, const RunOptions& options) {
  const auto& w = cmd.words;
  if (w[0] == "validate") return run_validate(spec, w[1], r, options);
  if (w[0] == "derive-cartesian") return run_derive(spec, w[1], r);
  if (w[0] == "lan") return run_lan(spec, cmd, r);
  if (w[0] == "convolve") return run_convolve(spec, cmd, r);
  if (w[0] == "theory") return run_theory(spec, cmd, r, options);
  const std::string& tag = w[1];
  if (tag == "coyoneda") return run_coyoneda(spec, cmd, r);
  if (tag == "fubini") return run_fubini(spec, cmd, r, options);
  if (tag == "mates") return run_mates(spec, cmd, r);
  if (tag == "main-theorem") return run_main_theorem(spec, cmd, r);
  if (tag == "pointwise-convolution") return run_pointwise(spec, cmd, r);
  if (tag == "exists-k") return run_exists_k(spec, cmd, r);
  if (tag == "corollary3") return run_corollary3(spec, cmd, r);
  if (tag == "corollary4") return run_corollary4(spec, cmd, r);
  throw Error("unknown check tag " + tag);
}

template <class Fn>
Record timed(const std::string& command, const std::string& tag, Fn&& body) {
  Record r;
  r.command = command;
  r.tag = tag;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.add("error", e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

// Suites -----------------------------------------------------------------------------

std::vector<std::pair<NamedCategory, CartesianStructure>> cartesian_fixtures() {
  std::vector<std::pair<NamedCategory, CartesianStructure>> out;
  for (NamedCategory& nc : shipped_categories()) {
    CartesianSearch s = derive_cartesian(nc.cat);
    if (s.structure) out.emplace_back(std::move(nc), std::move(*s.structure));
  }
  return out;
}

/// Counts cases and keeps the first failure.
struct Tally {
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::string failure;

  void add(bool ok, const std::function<std::string()>& cite) {
    ++cases;
    if (ok) {
      ++passed;
    } else if (failure.empty()) {
      failure = cite();
    }
  }

  void report(Record& r, const std::string& prefix = "") const {
    r.add(prefix + "cases", std::to_string(cases));
    r.add(prefix + "passed", std::to_string(passed));
    if (!failure.empty()) r.fail(prefix + failure);
  }
};

void suite_coyoneda(Record& r, const RunOptions& options) {
  Tally t;
  std::size_t categories = 0;
  for (const NamedCategory& nc : shipped_categories()) {
    ++categories;
    for (const SetFunctor& f : functor_fixtures(nc.cat, options.max_size)) {
      for (std::size_t a = 0; a < nc.cat->object_count(); ++a) {
        const IsoWitness iso = coyoneda_check(f, a);
        t.add(iso.ok, [&] { return nc.name + " at " + nc.cat->object(a) + " F=" + sets_text(*nc.cat, f.sets) + ": " + iso.detail; });
      }
    }
  }
  r.add("categories", std::to_string(categories));
  t.report(r);
}

void suite_mates(Record& r, const RunOptions& options) {
  Tally t;
  std::size_t connections = 0;
  for (const NamedCategory& nc : mates_posets()) {
    for (const NamedCategory& na : mates_posets()) {
      const std::vector<Weight> ws = weight_fixtures(na.cat, options.max_size);
      const std::vector<SetFunctor> gs = functor_fixtures(nc.cat, options.max_size);
      for (const Adjunction& adj : galois_connections(nc.cat, na.cat)) {
        ++connections;
        for (const Weight& w : ws) {
          for (const SetFunctor& g : gs) {
            const MatesResult m = mates_check(w, g, adj);
            t.add(m.iso.ok, [&] { return nc.name + " -> " + na.name + ": link mates: " + m.iso.detail; });
          }
        }
      }
    }
  }
  r.add("galois-connections", std::to_string(connections));
  t.report(r);
}

void suite_main_theorem(Record& r, const RunOptions&) {
  std::size_t maps = 0, runs = 0;
  TheoremReport agg;
  for (const NamedCategory& na : lattice_fixtures()) {
    const CartesianStructure ca = *derive_cartesian(na.cat).structure;
    const std::vector<SetFunctor> fs = filter_indicators(ca);
    for (const NamedCategory& nb : lattice_fixtures()) {
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      for (const CatFunctor& j : meet_top_preserving_maps(ca, cb)) {
        ++maps;
        for (const SetFunctor& f : fs) {
          merge_theorem(agg, main_theorem_check(j, ca, cb, f), na.name + " -> " + nb.name + " F=" + indicator_name(f),
                        runs++ == 0);
        }
      }
    }
  }
  r.add("maps", std::to_string(maps));
  r.add("runs", std::to_string(runs));
  add_theorem(r, agg);
  const NonMeetPreservingFixture neg = non_meet_preserving_fixture();
  const TheoremReport nr = main_theorem_check(neg.j, neg.a, neg.b, neg.f);
  r.add("control", "diamond -> chain3 not meet-preserving");
  r.add("control.verdict", nr.ok() ? "pass" : "fail");
  r.add("control.cited", nr.first_failure());
  if (nr.ok()) r.fail("control: the non-meet-preserving map passed");
}

void suite_pointwise(Record& r, const RunOptions& options) {
  Tally t;
  for (const auto& [nc, cart] : cartesian_fixtures()) {
    const PromonoidalStructure p = promonoidal_from_monoidal(cart);
    std::vector<SetFunctor> fs;
    for (const Weight& w : weight_fixtures(nc.cat, options.max_size)) fs.push_back(SetFunctor{p.base, w.sets, w.maps});
    for (const SetFunctor& m : fs) {
      for (const SetFunctor& n : fs) {
        const ConvolutionResult conv = day_convolve(m, n, p);
        const SetTransformation tr = convolution_to_pointwise(conv, cart, m, n);
        std::string failure;
        for (std::size_t a = 0; a < tr.components.size() && failure.empty(); ++a) {
          const IsoWitness iso = iso_from_map(tr.components[a]);
          if (!iso.ok) failure = nc.name + " component " + nc.cat->object(a) + ": " + iso.detail;
        }
        t.add(failure.empty(), [&] { return failure; });
      }
    }
  }
  t.report(r);
}

void suite_exists_k(Record& r, const RunOptions&) {
  Tally t;
  for (const NamedCategory& na : lattice_fixtures()) {
    const CartesianStructure ca = *derive_cartesian(na.cat).structure;
    const PromonoidalStructure pa = promonoidal_from_monoidal(ca);
    for (const NamedCategory& nb : lattice_fixtures()) {
      const CartesianStructure cb = *derive_cartesian(nb.cat).structure;
      const PromonoidalStructure pb = promonoidal_from_monoidal(cb);
      for (const CatFunctor& j : meet_top_preserving_maps(ca, cb)) {
        const CanonicalConstraints cc = constraints_from_cartesian(j, ca, cb);
        if (!cc.strong) {
          t.add(false, [&] { return na.name + " -> " + nb.name + ": J not strong: " + cc.detail; });
          continue;
        }
        const PromonoidalModule k = corollary1_module(*cc.strong, ca, cb, pa, pb);
        const ValidationReport v = validate_promonoidal_module(k, pa, pb);
        t.add(k.strong && v.ok(), [&] {
          return na.name + " -> " + nb.name + ": " + (v.ok() ? std::string("module not strong") : v.summary());
        });
      }
    }
  }
  t.report(r, "modules.");
  const LaxModuleFixture lax = lax_module_fixture();
  const TheoremReport lr = theorem_hit_check(lax.k, lax.f, lax.f, lax.pi, lax.pi);
  r.add("control", "monoid {e,a} with a*a=a");
  r.add("control.well-defined", yes_no(lr.well_defined));
  r.add("control.invertible", yes_no(lr.ok()));
  r.add("control.cited", lr.first_failure());
  if (!lr.well_defined) r.fail("control: lax module constraints are not well defined");
  if (lr.ok()) r.fail("control: lax module constraints came out invertible");
}

void suite_corollary3(Record& r, const RunOptions& options) {
  Tally t;
  for (const auto& [nc, cart] : cartesian_fixtures()) {
    const std::vector<Weight> ws = weight_fixtures(nc.cat, options.max_size);
    for (const SetFunctor& f : filter_indicators(cart)) {
      for (const Weight& w1 : ws) {
        for (const Weight& w2 : ws) {
          const TheoremReport tr = corollary3_check(f, cart, w1, w2);
          t.add(tr.ok(), [&] { return nc.name + " F=" + indicator_name(f) + ": " + tr.first_failure(); });
        }
      }
    }
  }
  t.report(r);
}

void suite_corollary4(Record& r, const RunOptions&) {
  Tally t;
  std::size_t routes = 0;
  // every map between fixtures of at most 4 objects, the identity on the larger ones
  const auto fixtures = cartesian_fixtures();
  for (const auto& [na, ca] : fixtures) {
    const bool small_a = na.cat->object_count() <= 4;
    const std::vector<SetFunctor> fs = filter_indicators(ca);
    for (const auto& [nb, cb] : fixtures) {
      const bool small_b = nb.cat->object_count() <= 4;
      std::vector<CatFunctor> js;
      if (small_a && small_b) {
        js = meet_top_preserving_maps(ca, cb);
      } else if (&na == &nb) {
        js.push_back(identity_functor(na.cat));
      }
      for (const CatFunctor& j : js) {
        for (const SetFunctor& f : fs) {
          const Corollary4Report c4 = corollary4_check(j, ca, cb, f);
          if (c4.routes_agree) ++routes;
          t.add(c4.ok(), [&] {
            const std::string why = !c4.routes_agree ? "routes disagree: " + c4.agreement_detail
                                    : !c4.verdicts_agree ? std::string("verdicts disagree")
                                    : !c4.direct.ok()    ? "direct: " + c4.direct.first_failure()
                                                         : "nerve: " + c4.nerve.first_failure();
            return na.name + " -> " + nb.name + " F=" + indicator_name(f) + ": " + why;
          });
        }
      }
    }
  }
  r.add("routes-agree", std::to_string(routes));
  t.report(r);
}

void suite_lawvere(Record& r, const RunOptions& options) {
  SpecFile spec;
  for (const char* name : {"pointed-sets", "m-sets"}) {
    make_command(spec, {"theory", "adjunction", name});
    const TheoryPair tp = theory_pair(spec, name);
    const std::vector<TheoryModel> sources = enumerate_models(*tp.from, options.max_size);
    std::string sizes;
    for (const TheoryModel& s : sources) {
      const FreeModelResult fm = free_model(tp.theta, *tp.from, *tp.to, s);
      sizes += (sizes.empty() ? "" : " ") + std::to_string(s.carrier.size()) + "->" +
               (fm.model ? std::to_string(fm.model->carrier.size()) : std::string("none"));
      if (!fm.model) r.fail(std::string(name) + " |S|=" + std::to_string(s.carrier.size()) + ": " + fm.failure);
    }
    const std::vector<TheoryModel> targets = enumerate_models(*tp.to, options.max_size);
    const AdjunctionReport adj = adjunction_check(tp.theta, *tp.from, *tp.to, sources, targets);
    const std::string prefix = std::string(name) + ".";
    r.add(prefix + "free-sizes", sizes);
    r.add(prefix + "target-models", std::to_string(targets.size()));
    r.add(prefix + "adjunction", adj.ok() ? "pass" : "fail");
    r.add(prefix + "squares", std::to_string(adj.naturality_squares));
    if (!adj.ok()) r.fail(prefix + "adjunction: " + adj.detail);
  }
}

}  // namespace

Record run_command(const SpecFile& spec, const Command& cmd, const RunOptions& options) {
  return timed(cmd.text, tag_of(cmd), [&](Record& r) { dispatch(spec, cmd, r, options); });
}

Report run_spec(const SpecFile& spec, const std::string& source, const RunOptions& options) {
  Report report;
  report.source = source;
  report.records.resize(spec.commands.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, spec.commands.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.commands.size(); i = next++) {
      report.records[i] = run_command(spec, spec.commands[i], options);
    }
  };
  if (jobs <= 1) {
    worker();
    return report;
  }
  std::vector<std::thread> threads;
  for (std::size_t k = 0; k < jobs; ++k) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  return report;
}

const std::vector<std::string>& check_tags() {
  static const std::vector<std::string> tags{"coyoneda",   "fubini",     "mates",      "main-theorem",
                                             "pointwise-convolution", "exists-k", "corollary3",
                                             "corollary4", "lawvere-adjunction"};
  return tags;
}

Record run_suite(const std::string& tag, const RunOptions& options) {
  return timed("check " + tag, tag, [&](Record& r) {
    r.add("fixtures", "shipped");
    if (tag == "coyoneda") return suite_coyoneda(r, options);
    if (tag == "fubini") return run_fubini_random(100, r, options);
    if (tag == "mates") return suite_mates(r, options);
    if (tag == "main-theorem") return suite_main_theorem(r, options);
    if (tag == "pointwise-convolution") return suite_pointwise(r, options);
    if (tag == "exists-k") return suite_exists_k(r, options);
    if (tag == "corollary3") return suite_corollary3(r, options);
    if (tag == "corollary4") return suite_corollary4(r, options);
    if (tag == "lawvere-adjunction") return suite_lawvere(r, options);
    throw Error("unknown check tag " + tag);
  });
}

}  // namespace kanext
