#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kanext {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Raised on contract violations (mismatched domains, unknown names,
/// exceeded search guards). Check results are returned as reports instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite set of opaque, pairwise distinct labels. Element order is the
/// construction order and every operation preserves it.
///
/// Copies share the underlying storage; a FinSet is immutable.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> labels);

  /// A set of `n` elements whose labels are computed on first use.
  static FinSet generated(std::size_t n, std::function<std::string(std::size_t)> label);

  std::size_t size() const { return data_->size; }
  bool empty() const { return size() == 0; }
  const std::string& label(std::size_t i) const { return labels().at(i); }
  const std::vector<std::string>& labels() const;
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  bool operator==(const FinSet& other) const;

  static FinSet singleton(std::string label = "*");
  static FinSet range(std::size_t n);  // labels "0".."n-1"

 private:
  struct Data {
    std::size_t size = 0;
    std::function<std::string(std::size_t)> generator;
    mutable std::once_flag once;
    mutable std::vector<std::string> labels;
    mutable std::unordered_map<std::string, std::size_t> index;

    void materialize() const;
  };
  std::shared_ptr<const Data> data_;
};

/// A total function between finite sets, stored as an index table.
class FinFunction {
 public:
  FinFunction() = default;
  FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t operator()(std::size_t x) const { return table_[x]; }

  bool operator==(const FinFunction& other) const;

  static FinFunction identity(const FinSet& x);

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

/// g ∘ f
FinFunction compose(const FinFunction& g, const FinFunction& f);

struct Product {
  FinSet set;
  FinFunction proj1;
  FinFunction proj2;
  std::size_t width = 0;  // |Y|

  std::size_t pair(std::size_t x, std::size_t y) const { return x * width + y; }
  std::size_t first(std::size_t p) const { return p / width; }
  std::size_t second(std::size_t p) const { return p % width; }
};

/// Cartesian product, X-major, labels "(x,y)".
Product product(const FinSet& x, const FinSet& y);

/// f × g between two chosen products.
FinFunction product_map(const Product& from, const Product& to, const FinFunction& f,
                        const FinFunction& g);

struct Coproduct {
  FinSet set;
  std::vector<FinFunction> injections;
  std::vector<std::size_t> offsets;

  std::size_t inject(std::size_t part, std::size_t x) const { return offsets[part] + x; }
};

/// Tagged disjoint union, labels "k#x" with k the part index.
Coproduct coproduct(const std::vector<FinSet>& parts);

struct Quotient {
  FinSet set;
  FinFunction map;  // the canonical surjection
};

/// Union-find over 0..n-1. The representative of a class is its least member.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

/// Quotient of `base` by the classes of `uf`; classes are ordered by their
/// least member and labeled "[rep]".
Quotient quotient(const FinSet& base, UnionFind& uf);

/// Coequalizer of f, g : X → Y.
Quotient coequalizer(const FinFunction& f, const FinFunction& g);

struct InverseResult {
  std::optional<FinFunction> inverse;
  std::optional<std::pair<std::size_t, std::size_t>> collision;  // two domain elements
  std::optional<std::size_t> missed;                             // codomain element
  bool bijective() const { return inverse.has_value(); }
  std::string describe(const FinFunction& f) const;
};

InverseResult find_inverse(const FinFunction& f);

bool is_injective(const FinFunction& f);
bool is_surjective(const FinFunction& f);

/// Every function X → Y in lexicographic table order; throws past `limit`.
std::vector<FinFunction> all_functions(const FinSet& x, const FinSet& y,
                                       std::size_t limit = 100000);

/// Cardinality of Y^X, saturating at npos.
std::size_t count_functions(std::size_t x, std::size_t y);

std::string to_string(const FinSet& s);
std::string to_string(const FinFunction& f);

}  // namespace kanext
