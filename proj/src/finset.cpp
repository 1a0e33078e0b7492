#include "kanext/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kanext {

FinSet::FinSet() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

FinSet::FinSet(std::vector<std::string> labels) {
  auto data = std::make_shared<Data>();
  data->size = labels.size();
  data->index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!data->index.emplace(labels[i], i).second) {
      throw Error("duplicate element label '" + labels[i] + "'");
    }
  }
  data->labels = std::move(labels);
  data_ = std::move(data);
}

FinSet FinSet::generated(std::size_t n, std::function<std::string(std::size_t)> label) {
  auto data = std::make_shared<Data>();
  data->size = n;
  if (n > 0) data->generator = std::move(label);
  FinSet out;
  out.data_ = std::move(data);
  return out;
}

void FinSet::Data::materialize() const {
  std::call_once(once, [this] {
    if (!generator) return;
    labels.reserve(size);
    index.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      labels.push_back(generator(i));
      index.emplace(labels.back(), i);
    }
  });
}

const std::vector<std::string>& FinSet::labels() const {
  data_->materialize();
  return data_->labels;
}

std::optional<std::size_t> FinSet::find(std::string_view label) const {
  data_->materialize();
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index_of(std::string_view label) const {
  auto i = find(label);
  if (!i) throw Error("no element '" + std::string(label) + "' in " + to_string(*this));
  return *i;
}

bool FinSet::operator==(const FinSet& other) const {
  return data_ == other.data_ || (size() == other.size() && labels() == other.labels());
}

FinSet FinSet::singleton(std::string label) { return FinSet({std::move(label)}); }

FinSet FinSet::range(std::size_t n) {
  return generated(n, [](std::size_t i) { return std::to_string(i); });
}

FinFunction::FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) {
    throw Error("function table has " + std::to_string(table_.size()) +
                " entries for a domain of size " + std::to_string(dom_.size()));
  }
  for (std::size_t y : table_) {
    if (y >= cod_.size()) throw Error("function image outside codomain");
  }
}

bool FinFunction::operator==(const FinFunction& other) const {
  return table_ == other.table_ && dom_ == other.dom_ && cod_ == other.cod_;
}

FinFunction FinFunction::identity(const FinSet& x) {
  std::vector<std::size_t> table(x.size());
  std::iota(table.begin(), table.end(), std::size_t{0});
  return FinFunction(x, x, std::move(table));
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod() == g.dom())) {
    throw Error("cannot compose: codomain " + to_string(f.cod()) + " differs from domain " +
                to_string(g.dom()));
  }
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = g(f(x));
  return FinFunction(f.dom(), g.cod(), std::move(table));
}

Product product(const FinSet& x, const FinSet& y) {
  const std::size_t n = x.size() * y.size();
  std::vector<std::size_t> p1, p2;
  p1.reserve(n);
  p2.reserve(n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      p1.push_back(i);
      p2.push_back(j);
    }
  }
  FinSet carrier = FinSet::generated(n, [x, y](std::size_t p) {
    return "(" + x.label(p / y.size()) + "," + y.label(p % y.size()) + ")";
  });
  return Product{carrier, FinFunction(carrier, x, std::move(p1)),
                 FinFunction(carrier, y, std::move(p2)), y.size()};
}

FinFunction product_map(const Product& from, const Product& to, const FinFunction& f,
                        const FinFunction& g) {
  std::vector<std::size_t> table(from.set.size());
  for (std::size_t p = 0; p < table.size(); ++p) {
    table[p] = to.pair(f(from.first(p)), g(from.second(p)));
  }
  return FinFunction(from.set, to.set, std::move(table));
}

Coproduct coproduct(const std::vector<FinSet>& parts) {
  Coproduct out;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.offsets.push_back(offset);
    offset += parts[k].size();
  }
  out.set = FinSet::generated(offset, [parts, offsets = out.offsets](std::size_t i) {
    const std::size_t k =
        static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), i) - offsets.begin()) - 1;
    return std::to_string(k) + "#" + parts[k].label(i - offsets[k]);
  });
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<std::size_t> table(parts[k].size());
    std::iota(table.begin(), table.end(), out.offsets[k]);
    out.injections.emplace_back(parts[k], out.set, std::move(table));
  }
  return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  // least index stays the root
  if (a < b) {
    parent_[b] = a;
  } else {
    parent_[a] = b;
  }
}

Quotient quotient(const FinSet& base, UnionFind& uf) {
  if (uf.size() != base.size()) throw Error("union-find size does not match the set");
  std::vector<std::size_t> class_of_root(base.size(), npos);
  std::vector<std::size_t> roots;
  std::vector<std::size_t> table(base.size());
  for (std::size_t x = 0; x < base.size(); ++x) {
    std::size_t r = uf.find(x);
    if (class_of_root[r] == npos) {
      class_of_root[r] = roots.size();
      roots.push_back(r);
    }
    table[x] = class_of_root[r];
  }
  const std::size_t classes = roots.size();
  FinSet q = FinSet::generated(classes, [base, roots = std::move(roots)](std::size_t i) {
    return "[" + base.label(roots[i]) + "]";
  });
  return Quotient{q, FinFunction(base, q, std::move(table))};
}

Quotient coequalizer(const FinFunction& f, const FinFunction& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw Error("coequalizer: f and g must share domain and codomain");
  }
  UnionFind uf(f.cod().size());
  for (std::size_t x = 0; x < f.dom().size(); ++x) uf.unite(f(x), g(x));
  return quotient(f.cod(), uf);
}

std::string InverseResult::describe(const FinFunction& f) const {
  if (collision) {
    return "not injective: " + f.dom().label(collision->first) + " and " +
           f.dom().label(collision->second) + " both map to " +
           f.cod().label(f(collision->first));
  }
  if (missed) return "not surjective: " + f.cod().label(*missed) + " is not hit";
  return "bijective";
}

InverseResult find_inverse(const FinFunction& f) {
  InverseResult result;
  std::vector<std::size_t> inverse(f.cod().size(), npos);
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    std::size_t y = f(x);
    if (inverse[y] != npos) {
      result.collision = std::make_pair(inverse[y], x);
      return result;
    }
    inverse[y] = x;
  }
  for (std::size_t y = 0; y < inverse.size(); ++y) {
    if (inverse[y] == npos) {
      result.missed = y;
      return result;
    }
  }
  result.inverse = FinFunction(f.cod(), f.dom(), std::move(inverse));
  return result;
}

bool is_injective(const FinFunction& f) {
  std::vector<bool> seen(f.cod().size(), false);
  for (std::size_t y : f.table()) {
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

bool is_surjective(const FinFunction& f) {
  std::vector<bool> seen(f.cod().size(), false);
  for (std::size_t y : f.table()) seen[y] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::size_t count_functions(std::size_t x, std::size_t y) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < x; ++i) {
    if (y != 0 && n > npos / y) return npos;
    n *= y;
  }
  return n;
}

std::vector<FinFunction> all_functions(const FinSet& x, const FinSet& y, std::size_t limit) {
  std::size_t count = count_functions(x.size(), y.size());
  if (count > limit) {
    throw Error("function enumeration " + std::to_string(x.size()) + " -> " +
                std::to_string(y.size()) + " exceeds the guard of " + std::to_string(limit));
  }
  std::vector<FinFunction> out;
  out.reserve(count);
  std::vector<std::size_t> table(x.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(x, y, table);
    for (std::size_t i = table.size(); i-- > 0;) {
      if (++table[i] < y.size()) break;
      table[i] = 0;
    }
  }
  return out;
}

std::string to_string(const FinSet& s) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s.label(i);
  out << "}";
  return out.str();
}

std::string to_string(const FinFunction& f) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    out << (i ? "," : "") << f.dom().label(i) << "->" << f.cod().label(f(i));
  }
  out << "}";
  return out.str();
}

}  // namespace kanext
