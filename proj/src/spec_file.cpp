#include "kanext/spec_file.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kanext {

SpecError::SpecError(SourceLocation where, const std::string& message)
    : Error(where.line == 0 ? message
                            : "line " + std::to_string(where.line) + ", column " +
                                  std::to_string(where.column) + ": " + message),
      where_(where) {}

std::string SpecFile::kind_of(const std::string& name) const {
  if (sets.contains(name)) return "set";
  if (categories.contains(name)) return "category";
  if (functors.contains(name)) return "functor";
  if (set_functors.contains(name)) return "set-functor";
  if (nat_trans.contains(name)) return "nat-trans";
  if (weights.contains(name)) return "weight";
  if (monoidal.contains(name)) return "monoidal";
  if (cartesian.contains(name)) return "cartesian";
  if (promonoidal.contains(name)) return "promonoidal";
  if (modules.contains(name)) return "module";
  if (theories.contains(name)) return "theory";
  if (theory_morphisms.contains(name)) return "theory-morphism";
  return "";
}

const CartesianStructure* SpecFile::cartesian_for(const CatRef& c) const {
  for (const auto& name : cartesian.order) {
    const CartesianStructure& s = cartesian.at(name).structure;
    if (s.base() == c) return &s;
  }
  return nullptr;
}

std::vector<TheoryPresentation> builtin_theories() {
  const std::vector<Operation> s_ops{{"s", 1}};
  return {
      TheoryPresentation{"sets", {}, {}, 3},
      TheoryPresentation{"pointed-sets", {{"e", 0}}, {}, 3},
      TheoryPresentation{"m-sets", s_ops, {{parse_term("s(s(x1))", s_ops), parse_term("x1", s_ops)}}, 3},
  };
}

MonoidalStructure thin_monoidal(const CatRef& c, const std::vector<std::size_t>& tensor,
                                std::size_t unit) {
  const FinCategory& cat = *c;
  if (!cat.is_thin()) throw Error("thin_monoidal: category is not thin");
  const std::size_t n = cat.object_count(), m = cat.morphism_count();
  auto arrow = [&](std::size_t a, std::size_t b, const std::string& what) {
    const std::size_t u = cat.unique_morphism(a, b);
    if (u == npos) throw Error("no arrow " + cat.object(a) + " -> " + cat.object(b) + " for " + what);
    return u;
  };
  MonoidalStructure s;
  s.base = c;
  s.tensor_obj = tensor;
  s.unit = unit;
  s.tensor_mor.assign(m * m, npos);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      s.tensor_mor[f * m + g] = arrow(s.tensor(cat.src(f), cat.src(g)), s.tensor(cat.dst(f), cat.dst(g)),
                                      "the tensor of " + cat.label(f) + " and " + cat.label(g));
    }
  }
  s.associator.assign(n * n * n, npos);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        s.associator[(a * n + b) * n + d] =
            arrow(s.tensor(s.tensor(a, b), d), s.tensor(a, s.tensor(b, d)), "an associator");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    s.left_unitor.push_back(arrow(s.tensor(unit, a), a, "a left unitor"));
    s.right_unitor.push_back(arrow(s.tensor(a, unit), a, "a right unitor"));
  }
  return s;
}

namespace {

const std::vector<std::string> kSections{"sets",    "categories",  "functors", "nat_trans",
                                         "weights", "monoidal",    "cartesian", "promonoidal",
                                         "modules", "theories",    "commands"};

bool word_char(char ch) {
  const unsigned char u = static_cast<unsigned char>(ch);
  return std::isalnum(u) || ch == '_' || ch == '\'' || ch == '^' || ch == '#' || ch == '!' ||
         ch == '?' || ch == '$' || ch == '%' || ch == '&' || ch == '|' || ch == '~' || u >= 0x80;
}

/// Reads one entry: positions map back to the original file.
class Cursor {
 public:
  Cursor(const std::string& text, SourceLocation start) : text_(text), start_(start) {}

  SourceLocation here() const { return location_of(pos_); }

  SourceLocation location_of(std::size_t pos) const {
    SourceLocation loc = start_;
    std::size_t line_start = 0;
    bool first_line = true;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++loc.line;
        line_start = i + 1;
        first_line = false;
      }
    }
    loc.column = first_line ? start_.column + pos : pos - line_start + 1;
    return loc;
  }

  [[noreturn]] void fail(const std::string& message) const { throw SpecError(here(), message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.compare(pos_, tok.size(), tok) == 0;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'" + found());
  }

  std::optional<std::string> try_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() &&
           (word_char(text_[end]) ||
            (text_[end] == '-' && (end + 1 >= text_.size() || text_[end + 1] != '>')))) {
      ++end;
    }
    if (end == pos_) return std::nullopt;
    std::string w = text_.substr(pos_, end - pos_);
    pos_ = end;
    return w;
  }

  std::string word(const std::string& what = "a name") {
    auto w = try_word();
    if (!w) fail("expected " + what + found());
    return *w;
  }

  std::size_t number(const std::string& what = "a number") {
    const SourceLocation at = here();
    const std::string w = word(what);
    if (!std::all_of(w.begin(), w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
        w.size() > 9) {
      throw SpecError(at, "expected " + what + ", found '" + w + "'");
    }
    return static_cast<std::size_t>(std::stoul(w));
  }

  /// open item (',' item)* close, possibly empty.
  template <class F>
  void list(char open, char close, F&& item) {
    expect(std::string(1, open));
    if (accept(std::string(1, close))) return;
    do {
      item();
    } while (accept(","));
    expect(std::string(1, close));
  }

  /// Raw text up to the first of `stops` outside parentheses.
  std::string raw_until(std::string_view stops) {
    skip_ws();
    const std::size_t begin = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '(') ++depth;
      if (ch == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && stops.find(ch) != std::string_view::npos) break;
      ++pos_;
    }
    std::string out = text_.substr(begin, pos_ - begin);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing text" + found());
  }

 private:
  std::string found() {
    skip_ws();
    if (pos_ >= text_.size()) return ", found end of entry";
    std::size_t end = pos_;
    while (end < text_.size() && end < pos_ + 12 && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
    return ", found '" + text_.substr(pos_, end - pos_) + "'";
  }

  const std::string& text_;
  SourceLocation start_;
  std::size_t pos_ = 0;
};

struct Entry {
  std::string section;
  SourceLocation where;
  std::string text;  // the header line and its continuation lines, joined by '\n'
};

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<Entry> split_entries(const std::string& text) {
  std::vector<Entry> entries;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = strip_comment(raw);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t indent = line.find_first_not_of(" \t");
    if (t.front() == '[') {
      if (t.back() != ']') throw SpecError({line_no, indent + 1}, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
        throw SpecError({line_no, indent + 2}, "unknown section '" + section + "'");
      }
      continue;
    }
    if (indent > 0 && !entries.empty() && entries.back().section == section &&
        section != "commands") {
      entries.back().text += "\n" + line;
      continue;
    }
    if (section.empty()) throw SpecError({line_no, indent + 1}, "entry outside of any section");
    entries.push_back(Entry{section, {line_no, indent + 1}, line.substr(indent)});
  }
  return entries;
}

/// Resolves names while the file is read top to bottom.
class Parser {
 public:
  explicit Parser(SpecFile& spec) : spec_(spec) {}

  void parse(const std::string& text) {
    for (const Entry& e : split_entries(text)) {
      if (e.section == "commands") {
        command(e);
        continue;
      }
      Cursor c(e.text, e.where);
      const SourceLocation name_at = c.here();
      const std::string name = c.word("an entity name");
      claim(name, name_at);
      std::string type;
      SourceLocation type_at{};
      if (c.accept(":")) {
        type_at = c.here();
        type = c.raw_until("=");
        // "=>" belongs to the type of a transformation
        while (c.peek("=>")) {
          c.expect("=>");
          type += " => " + c.raw_until("=");
        }
      }
      c.expect("=");
      try {
        entry(e.section, name, type, type_at, c);
      } catch (const SpecError&) {
        throw;
      } catch (const Error& err) {
        throw SpecError(name_at, name + ": " + err.what());
      }
    }
  }

  Command command_from_words(const std::vector<std::string>& words) {
    Command cmd;
    cmd.where = {0, 0};
    cmd.words = words;
    for (std::size_t i = 0; i < words.size(); ++i) cmd.text += (i ? " " : "") + words[i];
    check_command(cmd);
    return cmd;
  }

 private:
  void claim(const std::string& name, SourceLocation at) {
    if (!spec_.kind_of(name).empty() || builtin(name)) {
      throw SpecError(at, "duplicate name '" + name + "'");
    }
  }

  static bool builtin(const std::string& name) {
    for (const auto& p : builtin_theories()) {
      if (p.name == name) return true;
    }
    return false;
  }

  void entry(const std::string& section, const std::string& name, const std::string& type,
             SourceLocation type_at, Cursor& c) {
    if (section == "sets") {
      no_type(type, type_at, section);
      spec_.sets.add(name, set_value(c));
    } else if (section == "categories") {
      no_type(type, type_at, section);
      spec_.categories.add(name, category(name, c));
    } else if (section == "functors") {
      functor(name, type, type_at, c);
    } else if (section == "nat_trans") {
      nat_trans(name, type, type_at, c);
    } else if (section == "weights") {
      Cursor tc(type, type_at);
      if (type.empty()) throw SpecError(type_at, "a weight needs its category: NAME : C = ...");
      const CatRef cat = lookup_category(tc);
      tc.expect_end();
      spec_.weights.add(name, weight(cat, c));
    } else if (section == "monoidal") {
      monoidal(name, type, type_at, c);
    } else if (section == "cartesian") {
      no_type(type, type_at, section);
      const std::string kind = c.word("'derive'");
      if (kind != "derive") c.fail("expected 'derive C [partial]'");
      const SourceLocation at = c.here();
      const std::string cname = c.word("a category");
      const CatRef cat = category_named(cname, at);
      bool partial = false;
      if (!c.at_end()) {
        if (c.word() != "partial") c.fail("expected 'partial' or end of entry");
        partial = true;
      }
      c.expect_end();
      CartesianSearch found = derive_cartesian(cat, partial);
      if (!found.structure) throw SpecError(at, cname + " is not cartesian: " + found.failure);
      spec_.cartesian.add(name, CartesianEntry{cname, std::move(*found.structure)});
    } else if (section == "promonoidal") {
      no_type(type, type_at, section);
      const std::string kind = c.word("'from-cartesian'");
      if (kind != "from-cartesian") c.fail("expected 'from-cartesian AC'");
      const CartesianStructure& cart = cartesian_named(c);
      c.expect_end();
      spec_.promonoidal.add(name, promonoidal_from_monoidal(cart));
    } else if (section == "modules") {
      no_type(type, type_at, section);
      spec_.modules.add(name, module(c));
    } else if (section == "theories") {
      theory(name, type, type_at, c);
    }
  }

  static void no_type(const std::string& type, SourceLocation at, const std::string& section) {
    if (!type.empty()) throw SpecError(at, "entries of [" + section + "] take no ': type'");
  }

  // Lookups ---------------------------------------------------------------------------

  CatRef category_named(const std::string& name, SourceLocation at) const {
    if (!spec_.categories.contains(name)) throw SpecError(at, "unknown category '" + name + "'");
    return spec_.categories.at(name);
  }

  CatRef lookup_category(Cursor& c) const {
    const SourceLocation at = c.here();
    return category_named(c.word("a category"), at);
  }

  const CartesianStructure& cartesian_named(Cursor& c) const {
    const SourceLocation at = c.here();
    const std::string name = c.word("a cartesian structure");
    if (!spec_.cartesian.contains(name)) throw SpecError(at, "unknown cartesian structure '" + name + "'");
    return spec_.cartesian.at(name).structure;
  }

  const SetFunctor& set_functor_named(Cursor& c) const {
    const SourceLocation at = c.here();
    const std::string name = c.word("a set-valued functor");
    if (!spec_.set_functors.contains(name)) throw SpecError(at, "unknown set-valued functor '" + name + "'");
    return spec_.set_functors.at(name);
  }

  static std::size_t object_ref(const FinCategory& cat, Cursor& c) {
    const SourceLocation at = c.here();
    const std::string w = c.word("an object");
    for (std::size_t a = 0; a < cat.object_count(); ++a) {
      if (cat.object(a) == w) return a;
    }
    throw SpecError(at, "category " + cat.name() + " has no object '" + w + "'");
  }

  /// f | a -> b | f@a->b
  static std::size_t morphism_ref(const FinCategory& cat, Cursor& c) {
    const SourceLocation at = c.here();
    const std::string first = c.word("a morphism");
    auto in_hom = [&](std::size_t a, std::size_t b, const std::string* name) {
      std::vector<std::size_t> found;
      for (std::size_t m : cat.hom(a, b)) {
        if (!name || cat.morphism(m).name == *name) found.push_back(m);
      }
      return found;
    };
    auto object_named = [&](const std::string& w) {
      for (std::size_t a = 0; a < cat.object_count(); ++a) {
        if (cat.object(a) == w) return a;
      }
      throw SpecError(at, "category " + cat.name() + " has no object '" + w + "'");
    };
    std::vector<std::size_t> found;
    std::string shown = first;
    if (c.accept("@")) {
      const std::size_t a = object_named(c.word("an object"));
      c.expect("->");
      const std::size_t b = object_named(c.word("an object"));
      found = in_hom(a, b, &first);
      shown = first + "@" + cat.object(a) + "->" + cat.object(b);
    } else if (c.accept("->")) {
      const std::size_t a = object_named(first);
      const std::size_t b = object_named(c.word("an object"));
      found = in_hom(a, b, nullptr);
      shown = cat.object(a) + "->" + cat.object(b);
    } else {
      for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
        if (cat.morphism(m).name == first) found.push_back(m);
      }
    }
    if (found.empty()) throw SpecError(at, "category " + cat.name() + " has no morphism " + shown);
    if (found.size() > 1) {
      throw SpecError(at, "morphism " + shown + " is ambiguous in " + cat.name() +
                              "; write name@source->target");
    }
    return found.front();
  }

  // Sets ------------------------------------------------------------------------------

  FinSet set_value(Cursor& c) const {
    if (c.peek("{")) {
      std::vector<std::string> labels;
      const SourceLocation at = c.here();
      c.list('{', '}', [&] { labels.push_back(c.word("an element")); });
      try {
        return FinSet(std::move(labels));
      } catch (const Error& e) {
        throw SpecError(at, e.what());
      }
    }
    const SourceLocation at = c.here();
    const std::string w = c.word("a set");
    if (w == "range") return FinSet::range(c.number());
    if (std::all_of(w.begin(), w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      return FinSet::range(std::stoul(w));
    }
    if (!spec_.sets.contains(w)) throw SpecError(at, "unknown set '" + w + "'");
    return spec_.sets.at(w);
  }

  static std::size_t element_ref(const FinSet& s, Cursor& c) {
    const SourceLocation at = c.here();
    const std::string w = c.word("an element");
    if (auto i = s.find(w)) return *i;
    throw SpecError(at, "no element '" + w + "' in " + to_string(s));
  }

  /// [y1, y2, ...]: images of the elements of `dom` in order.
  static FinFunction table(const FinSet& dom, const FinSet& cod, Cursor& c) {
    const SourceLocation at = c.here();
    std::vector<std::size_t> images;
    c.list('[', ']', [&] { images.push_back(element_ref(cod, c)); });
    if (images.size() != dom.size()) {
      throw SpecError(at, "table has " + std::to_string(images.size()) + " entries for a domain of " +
                              std::to_string(dom.size()) + " elements");
    }
    return FinFunction(dom, cod, std::move(images));
  }

  // Categories ------------------------------------------------------------------------

  CatRef category(const std::string& name, Cursor& c) const {
    const SourceLocation kind_at = c.here();
    const std::string kind = c.word("a category kind");
    CatRef out;
    if (kind == "unit") {
      out = unit_category();
    } else if (kind == "discrete") {
      out = discrete_category(c.number(), name);
    } else if (kind == "chain") {
      out = chain_category(c.number());
    } else if (kind == "diamond") {
      out = diamond_category();
    } else if (kind == "grid") {
      const std::size_t r = c.number();
      out = grid_category(r, c.number());
    } else if (kind == "parallel") {
      out = parallel_category(c.number());
    } else if (kind == "poset") {
      std::vector<std::string> objects;
      c.list('{', '}', [&] { objects.push_back(c.word("an object")); });
      std::vector<std::pair<std::string, std::string>> le;
      if (c.peek("{")) {
        c.list('{', '}', [&] {
          const SourceLocation at = c.here();
          const std::string a = c.word("an object");
          c.expect("<=");
          const std::string b = c.word("an object");
          for (const auto& o : {a, b}) {
            if (std::find(objects.begin(), objects.end(), o) == objects.end()) {
              throw SpecError(at, "unknown object '" + o + "'");
            }
          }
          le.emplace_back(a, b);
        });
      }
      out = poset_category(name, objects, le);
    } else if (kind == "monoid") {
      out = monoid(name, c);
    } else if (kind == "explicit") {
      out = explicit_category(name, c);
    } else if (kind == "opposite") {
      out = opposite(lookup_category(c));
    } else if (kind == "product") {
      const CatRef a = lookup_category(c);
      out = tensor_category(a, lookup_category(c));
    } else {
      throw SpecError(kind_at, "unknown category kind '" + kind + "'");
    }
    c.expect_end();
    const ValidationReport v = validate_category(*out);
    if (!v.ok()) throw SpecError(kind_at, name + " is not a category: " + v.summary());
    return out;
  }

  /// monoid {e, a, ...} {a * a = a, ...}; the first element is the identity.
  static CatRef monoid(const std::string& name, Cursor& c) {
    std::vector<std::string> elements;
    c.list('{', '}', [&] { elements.push_back(c.word("an element")); });
    if (elements.empty()) c.fail("a monoid needs at least its identity element");
    const FinSet set(elements);
    const std::size_t n = elements.size();
    std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n, npos));
    for (std::size_t i = 0; i < n; ++i) {
      mult[0][i] = i;
      mult[i][0] = i;
    }
    if (c.peek("{")) {
      c.list('{', '}', [&] {
        const std::size_t a = element_ref(set, c);
        c.expect("*");
        const std::size_t b = element_ref(set, c);
        c.expect("=");
        mult[a][b] = element_ref(set, c);
      });
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mult[i][j] == npos) c.fail("product " + elements[i] + " * " + elements[j] + " is not given");
      }
    }
    return monoid_category(name, elements, mult);
  }

  /// explicit {objects} {f: a -> b, ...} {g . f = h, ...}
  static CatRef explicit_category(const std::string& name, Cursor& c) {
    CategoryBuilder b(name);
    std::vector<std::string> objects;
    c.list('{', '}', [&] {
      const SourceLocation at = c.here();
      const std::string o = c.word("an object");
      if (std::find(objects.begin(), objects.end(), o) != objects.end()) {
        throw SpecError(at, "object '" + o + "' declared twice");
      }
      objects.push_back(o);
      b.add_object(o);
    });
    auto object = [&](SourceLocation at, const std::string& w) {
      const auto it = std::find(objects.begin(), objects.end(), w);
      if (it == objects.end()) throw SpecError(at, "unknown object '" + w + "'");
      return static_cast<std::size_t>(it - objects.begin());
    };
    std::map<std::string, std::size_t> by_name;
    std::vector<std::pair<std::size_t, std::size_t>> ends(objects.size());
    for (std::size_t a = 0; a < objects.size(); ++a) ends[a] = {a, a};
    if (c.peek("{")) {
      c.list('{', '}', [&] {
        const SourceLocation at = c.here();
        const std::string f = c.word("a morphism name");
        if (f == "id" || by_name.count(f)) throw SpecError(at, "morphism name '" + f + "' is taken");
        c.expect(":");
        const SourceLocation sat = c.here();
        const std::size_t s = object(sat, c.word("an object"));
        c.expect("->");
        const SourceLocation dat = c.here();
        const std::size_t d = object(dat, c.word("an object"));
        by_name[f] = b.add_morphism(f, s, d);
        ends.emplace_back(s, d);
      });
    }
    std::set<std::pair<std::size_t, std::size_t>> given;
    if (c.peek("{")) {
      c.list('{', '}', [&] {
        auto named = [&]() {
          const SourceLocation at = c.here();
          const std::string w = c.word("a morphism");
          auto it = by_name.find(w);
          if (it == by_name.end()) throw SpecError(at, "unknown morphism '" + w + "'");
          return it->second;
        };
        const SourceLocation at = c.here();
        const std::size_t g = named();
        c.expect(".");
        const std::size_t f = named();
        c.expect("=");
        const std::size_t h = named();
        if (ends[f].second != ends[g].first) throw SpecError(at, "composite of non-composable morphisms");
        if (ends[h].first != ends[f].first || ends[h].second != ends[g].second) {
          throw SpecError(at, "composite has the wrong source or target");
        }
        b.set_composite(g, f, h);
        given.emplace(g, f);
      });
    }
    for (const auto& [fn, f] : by_name) {
      for (const auto& [gn, g] : by_name) {
        if (ends[f].second == ends[g].first && !given.count({g, f})) {
          c.fail("composite " + gn + " . " + fn + " is not given");
        }
      }
    }
    return b.build();
  }

  // Functors ---------------------------------------------------------------------------

  void functor(const std::string& name, const std::string& type, SourceLocation type_at, Cursor& c) {
    if (type.empty()) throw SpecError(type_at, "a functor needs a type: NAME : C -> D or NAME : C");
    Cursor tc(type, type_at);
    const CatRef dom = lookup_category(tc);
    if (tc.accept("->")) {
      const CatRef cod = lookup_category(tc);
      tc.expect_end();
      spec_.functors.add(name, cat_functor(dom, cod, c));
      return;
    }
    tc.expect_end();
    spec_.set_functors.add(name, set_functor(dom, c));
  }

  CatFunctor cat_functor(const CatRef& dom, const CatRef& cod, Cursor& c) const {
    const SourceLocation at = c.here();
    const std::string kind = c.word("'identity' or 'objects'");
    CatFunctor f;
    if (kind == "identity") {
      if (!same_category(dom, cod)) throw SpecError(at, "identity needs equal categories");
      f = identity_functor(dom);
      f.cod = cod;
    } else if (kind == "objects") {
      std::vector<std::size_t> obj(dom->object_count(), npos);
      c.list('{', '}', [&] {
        const std::size_t a = object_ref(*dom, c);
        c.expect(":");
        obj[a] = object_ref(*cod, c);
      });
      for (std::size_t a = 0; a < obj.size(); ++a) {
        if (obj[a] == npos) throw SpecError(at, "no image given for object " + dom->object(a));
      }
      if (c.peek("morphisms")) {
        c.word();
        std::vector<std::size_t> mor(dom->morphism_count(), npos);
        for (std::size_t a = 0; a < dom->object_count(); ++a) {
          mor[dom->identity(a)] = cod->identity(obj[a]);
        }
        c.list('{', '}', [&] {
          const std::size_t m = morphism_ref(*dom, c);
          c.expect(":");
          mor[m] = morphism_ref(*cod, c);
        });
        for (std::size_t m = 0; m < mor.size(); ++m) {
          if (mor[m] == npos) throw SpecError(at, "no image given for morphism " + dom->label(m));
        }
        f = CatFunctor{dom, cod, obj, mor};
      } else if (cod->is_thin()) {
        f = thin_functor(dom, cod, obj);
      } else {
        throw SpecError(at, "the target is not thin, so 'morphisms { ... }' is required");
      }
    } else {
      throw SpecError(at, "unknown functor kind '" + kind + "'");
    }
    c.expect_end();
    const ValidationReport v = validate_functor(f);
    if (!v.ok()) throw SpecError(at, "not a functor: " + v.summary());
    return f;
  }

  /// Shared by functors and weights: `contravariant` flips the direction of maps.
  template <class T>
  T set_valued(const CatRef& cat, Cursor& c, bool contravariant) const {
    const SourceLocation at = c.here();
    const std::string kind = c.word("a functor kind");
    T out{cat, {}, {}};
    if (kind == "constant") {
      const FinSet s = set_value(c);
      if constexpr (std::is_same_v<T, Weight>) {
        out = constant_weight(cat, s);
      } else {
        out = constant_functor(cat, s);
      }
    } else if (kind == "hom") {
      const std::size_t a = object_ref(*cat, c);
      if constexpr (std::is_same_v<T, Weight>) {
        out = hom_weight(cat, a);
      } else {
        out = hom_functor(cat, a);
      }
    } else if (kind == "indicator" || kind == "sets") {
      std::vector<std::optional<FinSet>> sets(cat->object_count());
      if (kind == "indicator") {
        for (auto& s : sets) s = FinSet();
        c.list('{', '}', [&] { sets[object_ref(*cat, c)] = FinSet::singleton("*"); });
      } else {
        c.list('{', '}', [&] {
          const std::size_t a = object_ref(*cat, c);
          c.expect(":");
          sets[a] = set_value(c);
        });
      }
      for (std::size_t a = 0; a < sets.size(); ++a) {
        if (!sets[a]) throw SpecError(at, "no set given for object " + cat->object(a));
        out.sets.push_back(*sets[a]);
      }
      std::vector<std::optional<FinFunction>> maps(cat->morphism_count());
      auto ends = [&](std::size_t m) {
        return contravariant ? std::make_pair(cat->dst(m), cat->src(m))
                             : std::make_pair(cat->src(m), cat->dst(m));
      };
      if (c.peek("maps")) {
        c.word();
        c.list('{', '}', [&] {
          const std::size_t m = morphism_ref(*cat, c);
          c.expect(":");
          const auto [s, d] = ends(m);
          maps[m] = table(out.sets[s], out.sets[d], c);
        });
      }
      for (std::size_t m = 0; m < maps.size(); ++m) {
        const auto [s, d] = ends(m);
        if (maps[m]) {
          out.maps.push_back(*maps[m]);
        } else if (cat->is_identity(m)) {
          out.maps.push_back(FinFunction::identity(out.sets[s]));
        } else if (out.sets[d].size() == 1 || out.sets[s].empty()) {
          // the only map into a singleton, or out of the empty set
          out.maps.emplace_back(out.sets[s], out.sets[d], std::vector<std::size_t>(out.sets[s].size(), 0));
        } else {
          throw SpecError(at, "no map given for morphism " + cat->label(m));
        }
      }
    } else {
      throw SpecError(at, "unknown functor kind '" + kind + "'");
    }
    c.expect_end();
    ValidationReport v;
    if constexpr (std::is_same_v<T, Weight>) {
      v = validate_weight(out);
    } else {
      v = validate_set_functor(out);
    }
    if (!v.ok()) throw SpecError(at, "not functorial: " + v.summary());
    return out;
  }

  SetFunctor set_functor(const CatRef& cat, Cursor& c) const { return set_valued<SetFunctor>(cat, c, false); }
  Weight weight(const CatRef& cat, Cursor& c) const { return set_valued<Weight>(cat, c, true); }

  void nat_trans(const std::string& name, const std::string& type, SourceLocation type_at, Cursor& c) {
    Cursor tc(type, type_at);
    if (type.empty()) throw SpecError(type_at, "a transformation needs a type: NAME : F => G");
    const std::string src = tc.word("a functor");
    const SetFunctor* f = spec_.set_functors.contains(src) ? &spec_.set_functors.at(src) : nullptr;
    if (!f) throw SpecError(type_at, "unknown set-valued functor '" + src + "'");
    tc.expect("=>");
    const SourceLocation gat = tc.here();
    const std::string dst = tc.word("a functor");
    if (!spec_.set_functors.contains(dst)) throw SpecError(gat, "unknown set-valued functor '" + dst + "'");
    const SetFunctor& g = spec_.set_functors.at(dst);
    tc.expect_end();
    if (!same_category(f->base, g.base)) throw SpecError(gat, src + " and " + dst + " have different domains");
    const SourceLocation at = c.here();
    std::vector<std::optional<FinFunction>> comps(f->base->object_count());
    c.list('{', '}', [&] {
      const std::size_t a = object_ref(*f->base, c);
      c.expect(":");
      comps[a] = table(f->sets[a], g.sets[a], c);
    });
    c.expect_end();
    SetTransformation alpha;
    for (std::size_t a = 0; a < comps.size(); ++a) {
      if (!comps[a]) throw SpecError(at, "no component given at " + f->base->object(a));
      alpha.components.push_back(*comps[a]);
    }
    const ValidationReport v = validate_transformation(*f, g, alpha);
    if (!v.ok()) throw SpecError(at, "not natural: " + v.summary());
    spec_.nat_trans.add(name, NatTransEntry{src, dst, std::move(alpha)});
  }

  // Structures -------------------------------------------------------------------------

  void monoidal(const std::string& name, const std::string& type, SourceLocation type_at, Cursor& c) {
    const SourceLocation at = c.here();
    const std::string kind = c.word("'cartesian' or 'thin'");
    if (kind == "cartesian") {
      no_type(type, type_at, "monoidal");
      const CartesianStructure& cart = cartesian_named(c);
      c.expect_end();
      spec_.monoidal.add(name, cart.monoidal);
      return;
    }
    if (kind != "thin") throw SpecError(at, "unknown monoidal kind '" + kind + "'");
    if (type.empty()) throw SpecError(at, "a thin monoidal structure needs its category: NAME : C = thin ...");
    Cursor tc(type, type_at);
    const CatRef cat = lookup_category(tc);
    tc.expect_end();
    const std::size_t n = cat->object_count();
    std::vector<std::size_t> tensor(n * n, npos);
    c.list('{', '}', [&] {
      const std::size_t a = object_ref(*cat, c);
      c.expect("*");
      const std::size_t b = object_ref(*cat, c);
      c.expect("=");
      tensor[a * n + b] = object_ref(*cat, c);
    });
    if (c.word("'unit'") != "unit") c.fail("expected 'unit'");
    const std::size_t unit = object_ref(*cat, c);
    c.expect_end();
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      if (tensor[i] == npos) {
        throw SpecError(at, "tensor " + cat->object(i / n) + " * " + cat->object(i % n) + " is not given");
      }
    }
    MonoidalStructure m = thin_monoidal(cat, tensor, unit);
    const ValidationReport v = validate_monoidal(m);
    if (!v.ok()) throw SpecError(at, "not monoidal: " + v.summary());
    spec_.monoidal.add(name, std::move(m));
  }

  const PromonoidalStructure& promonoidal_named(Cursor& c) const {
    const SourceLocation at = c.here();
    const std::string name = c.word("a promonoidal structure");
    if (!spec_.promonoidal.contains(name)) throw SpecError(at, "unknown promonoidal structure '" + name + "'");
    return spec_.promonoidal.at(name);
  }

  ModuleEntry module(Cursor& c) const {
    const SourceLocation at = c.here();
    const std::string kind = c.word("a module kind");
    ModuleEntry out;
    if (kind == "identity") {
      const PromonoidalStructure& p = promonoidal_named(c);
      out = ModuleEntry{identity_module(p), p, p};
    } else if (kind == "corollary1") {
      const SourceLocation jat = c.here();
      const std::string jn = c.word("a functor");
      if (!spec_.functors.contains(jn)) throw SpecError(jat, "unknown functor '" + jn + "'");
      const CatFunctor& j = spec_.functors.at(jn);
      const CartesianStructure& ca = cartesian_named(c);
      const CartesianStructure& cb = cartesian_named(c);
      if (!same_category(ca.base(), j.dom) || !same_category(cb.base(), j.cod)) {
        throw SpecError(jat, "the cartesian structures must live on the domain and codomain of " + jn);
      }
      const CanonicalConstraints cc = constraints_from_cartesian(j, ca, cb);
      if (!cc.strong) throw SpecError(jat, jn + " is not strong monoidal: " + cc.detail);
      PromonoidalStructure pa = promonoidal_from_monoidal(ca);
      PromonoidalStructure pb = promonoidal_from_monoidal(cb);
      PromonoidalModule k = corollary1_module(*cc.strong, ca, cb, pa, pb);
      out = ModuleEntry{std::move(k), std::move(pa), std::move(pb)};
    } else if (kind == "corollary2") {
      const SourceLocation wat = c.here();
      const SetFunctor& w = set_functor_named(c);
      const CartesianStructure& ca = cartesian_named(c);
      if (!same_category(w.base, ca.base())) throw SpecError(wat, "the functor must live on the cartesian category");
      const SetCanonicalConstraints sc = set_constraints_from_cartesian(w, ca);
      if (!sc.strong) throw SpecError(wat, "the functor is not strong monoidal: " + sc.detail);
      PromonoidalStructure pa = promonoidal_from_monoidal(ca);
      PromonoidalStructure pi = promonoidal_from_monoidal(*derive_cartesian(unit_category()).structure);
      PromonoidalModule k = corollary2_module(*sc.strong, ca, pa, pi);
      out = ModuleEntry{std::move(k), std::move(pa), std::move(pi)};
    } else if (kind == "monoid") {
      const PromonoidalStructure& p = promonoidal_named(c);
      if (p.base->object_count() != 1) throw SpecError(at, "a monoid module needs a one-object structure");
      std::vector<std::string> elements;
      c.list('{', '}', [&] { elements.push_back(c.word("an element")); });
      if (elements.empty()) c.fail("a monoid needs at least its identity element");
      const FinSet set(elements);
      const std::size_t n = elements.size();
      std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n, npos));
      for (std::size_t i = 0; i < n; ++i) mult[0][i] = mult[i][0] = i;
      if (c.peek("{")) {
        c.list('{', '}', [&] {
          const std::size_t a = element_ref(set, c);
          c.expect("*");
          const std::size_t b = element_ref(set, c);
          c.expect("=");
          mult[a][b] = element_ref(set, c);
        });
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (mult[i][j] == npos) throw SpecError(at, "product " + elements[i] + " * " + elements[j] + " is not given");
        }
      }
      out = ModuleEntry{monoid_module(p, elements, mult), p, p};
    } else {
      throw SpecError(at, "unknown module kind '" + kind + "'");
    }
    c.expect_end();
    return out;
  }

  // Theories ---------------------------------------------------------------------------

  const TruncatedTheory& theory_named(Cursor& c) {
    const SourceLocation at = c.here();
    const std::string name = c.word("a theory");
    if (const TruncatedTheory* t = resolve_theory(name)) return *t;
    throw SpecError(at, "unknown theory '" + name + "'");
  }

 public:
  /// Declared theories, then the built-in ones, which are built on first use.
  const TruncatedTheory* resolve_theory(const std::string& name) {
    if (spec_.theories.contains(name)) return &spec_.theories.at(name);
    for (const auto& p : builtin_theories()) {
      if (p.name == name) {
        spec_.theories.add(name, build_truncated_theory(p));
        return &spec_.theories.at(name);
      }
    }
    return nullptr;
  }

 private:
  void theory(const std::string& name, const std::string& type, SourceLocation type_at, Cursor& c) {
    if (!type.empty()) {
      Cursor tc(type, type_at);
      const std::string from = tc.word("a theory");
      tc.expect("->");
      const std::string to = tc.word("a theory");
      tc.expect_end();
      const TruncatedTheory* tf = resolve_theory(from);
      if (!tf) throw SpecError(type_at, "unknown theory '" + from + "'");
      const TruncatedTheory* tt = resolve_theory(to);
      if (!tt) throw SpecError(type_at, "unknown theory '" + to + "'");
      std::map<std::string, Term> given;
      const SourceLocation at = c.here();
      c.list('{', '}', [&] {
        const SourceLocation oat = c.here();
        const std::string op = c.word("an operation");
        c.expect(":");
        const std::string term = c.raw_until(",}");
        try {
          given[op] = parse_term(term, tt->presentation.operations);
        } catch (const Error& e) {
          throw SpecError(oat, e.what());
        }
      });
      c.expect_end();
      std::vector<Term> interpretation;
      for (const Operation& o : tf->presentation.operations) {
        auto it = given.find(o.name);
        if (it == given.end()) throw SpecError(at, "no interpretation given for " + o.name);
        interpretation.push_back(it->second);
        given.erase(it);
      }
      if (!given.empty()) throw SpecError(at, from + " has no operation " + given.begin()->first);
      spec_.theory_morphisms.add(name, TheoryMorphismEntry{from, to, theory_morphism(*tf, *tt, interpretation)});
      return;
    }
    TheoryPresentation p;
    p.name = name;
    const SourceLocation at = c.here();
    if (c.word("'ops'") != "ops") throw SpecError(at, "expected 'ops { name/arity, ... }'");
    c.list('{', '}', [&] {
      const std::string op = c.word("an operation");
      c.expect("/");
      p.operations.push_back(Operation{op, c.number("an arity")});
    });
    while (!c.at_end()) {
      const SourceLocation kat = c.here();
      const std::string key = c.word("'eqs' or 'truncation'");
      if (key == "eqs") {
        c.list('{', '}', [&] {
          const SourceLocation eat = c.here();
          const std::string lhs = c.raw_until("=,}");
          c.expect("=");
          const std::string rhs = c.raw_until(",}");
          try {
            p.equations.push_back(Equation{parse_term(lhs, p.operations), parse_term(rhs, p.operations)});
          } catch (const Error& e) {
            throw SpecError(eat, e.what());
          }
        });
      } else if (key == "truncation") {
        p.truncation = c.number("a truncation level");
      } else {
        throw SpecError(kat, "expected 'eqs' or 'truncation', found '" + key + "'");
      }
    }
    const ValidationReport v = validate_presentation(p);
    if (!v.ok()) throw SpecError(at, "invalid presentation: " + v.summary());
    spec_.theories.add(name, build_truncated_theory(p));
  }

  // Commands ---------------------------------------------------------------------------

  void command(const Entry& e) {
    Command cmd;
    cmd.where = e.where;
    std::istringstream in(e.text);
    std::string w;
    while (in >> w) cmd.words.push_back(w);
    for (std::size_t i = 0; i < cmd.words.size(); ++i) cmd.text += (i ? " " : "") + cmd.words[i];
    check_command(cmd);
    spec_.commands.push_back(std::move(cmd));
  }

  void check_command(const Command& cmd) {
    const auto& w = cmd.words;
    auto fail = [&](const std::string& message) -> void { throw SpecError(cmd.where, message); };
    auto expect_kind = [&](std::size_t i, const std::vector<std::string>& kinds) {
      if (i >= w.size()) fail("'" + cmd.text + "': missing argument " + std::to_string(i));
      std::string kind = spec_.kind_of(w[i]);
      if (kind.empty() && std::find(kinds.begin(), kinds.end(), "theory") != kinds.end() && resolve_theory(w[i])) {
        kind = "theory";
      }
      if (kind.empty()) fail("'" + cmd.text + "': unknown name '" + w[i] + "'");
      if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
        std::string expected;
        for (std::size_t k = 0; k < kinds.size(); ++k) expected += (k ? " or " : "") + kinds[k];
        fail("'" + cmd.text + "': " + w[i] + " is a " + kind + ", expected a " + expected);
      }
    };
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (w.size() < lo || w.size() > hi) fail("'" + cmd.text + "': wrong number of arguments");
    };
    auto key_value = [&](std::size_t i, const std::string& key) {
      if (i < w.size() && w[i].rfind(key + "=", 0) != 0) fail("'" + cmd.text + "': expected " + key + "=N");
    };
    if (w.empty()) fail("empty command");
    const std::string& op = w[0];
    if (op == "validate") {
      arity(2, 2);
      if (spec_.kind_of(w[1]).empty() && !resolve_theory(w[1])) fail("'" + cmd.text + "': unknown name '" + w[1] + "'");
    } else if (op == "derive-cartesian") {
      arity(2, 2);
      expect_kind(1, {"category"});
    } else if (op == "lan") {
      arity(3, 3);
      expect_kind(1, {"functor"});
      expect_kind(2, {"set-functor"});
    } else if (op == "convolve") {
      arity(4, 4);
      expect_kind(1, {"set-functor", "weight"});
      expect_kind(2, {"set-functor", "weight"});
      expect_kind(3, {"promonoidal"});
    } else if (op == "check") {
      if (w.size() < 2) fail("'check' needs a tag");
      const std::string& tag = w[1];
      if (tag == "coyoneda") {
        arity(3, 4);
        expect_kind(2, {"set-functor"});
      } else if (tag == "fubini") {
        if (w.size() == 4 && w[2] == "random") return;
        arity(5, 5);
        expect_kind(2, {"weight"});
        expect_kind(3, {"weight"});
        expect_kind(4, {"set-functor"});
      } else if (tag == "mates") {
        arity(6, 6);
        expect_kind(2, {"functor"});
        expect_kind(3, {"functor"});
        expect_kind(4, {"weight"});
        expect_kind(5, {"set-functor"});
      } else if (tag == "main-theorem") {
        arity(3, 4);
        expect_kind(2, {"functor"});
        if (w.size() == 4) expect_kind(3, {"set-functor"});
      } else if (tag == "pointwise-convolution") {
        arity(5, 5);
        expect_kind(2, {"cartesian"});
        expect_kind(3, {"weight"});
        expect_kind(4, {"weight"});
      } else if (tag == "exists-k") {
        arity(5, 5);
        expect_kind(2, {"module"});
        expect_kind(3, {"set-functor", "weight"});
        expect_kind(4, {"set-functor", "weight"});
      } else if (tag == "corollary3") {
        arity(6, 6);
        expect_kind(2, {"cartesian"});
        expect_kind(3, {"set-functor"});
        expect_kind(4, {"weight"});
        expect_kind(5, {"weight"});
      } else if (tag == "corollary4") {
        arity(4, 4);
        expect_kind(2, {"functor"});
        expect_kind(3, {"set-functor"});
      } else {
        fail("unknown check tag '" + tag + "'");
      }
    } else if (op == "theory") {
      if (w.size() < 2) fail("'theory' needs an action");
      const std::string& action = w[1];
      if (action == "models" || action == "adjunction") {
        arity(3, 4);
        expect_kind(2, action == "models" ? std::vector<std::string>{"theory"}
                                          : std::vector<std::string>{"theory", "theory-morphism"});
        key_value(3, "max");
      } else if (action == "free-model") {
        arity(4, 4);
        expect_kind(2, {"theory", "theory-morphism"});
        key_value(3, "S");
      } else {
        fail("unknown theory action '" + action + "'");
      }
    } else {
      fail("unknown command '" + op + "'");
    }
  }

  SpecFile& spec_;
};

}  // namespace

SpecFile parse_spec(const std::string& text) {
  SpecFile spec;
  Parser(spec).parse(text);
  return spec;
}

Command make_command(SpecFile& spec, const std::vector<std::string>& words) {
  return Parser(spec).command_from_words(words);
}

}  // namespace kanext
