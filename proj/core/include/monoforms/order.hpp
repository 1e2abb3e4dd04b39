#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monoforms/error.hpp"

namespace monoforms {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

// Finite poset. Two representations share one interface: an explicit
// comparability table (arbitrary posets, capped at 4096 elements) and an
// implicit q-ary grid L_q^n under componentwise order (covers boolean cubes
// and chains without materialising the relation).
//
// The element list order is the canonical enumeration; it is the single
// tie-breaking source for every construction downstream.
class Poset {
 public:
  static constexpr int max_table_size = 4096;
  static constexpr int max_cube_arity = 16;

  static PosetPtr from_covers(std::vector<std::string> elements,
                              const std::vector<std::pair<std::string, std::string>>& covers);
  static PosetPtr boolean_cube(int arity);
  static PosetPtr chain(int q);
  static PosetPtr grid(int q, int arity);

  int size() const { return size_; }
  std::string element(int i) const;
  int index_of(std::string_view id) const;  // throws unknown_element
  bool leq(int a, int b) const;
  bool strictly_less(int a, int b) const { return a != b && leq(a, b); }

  std::vector<std::pair<int, int>> cover_pairs() const;
  std::vector<int> cover_preds(int x) const;  // covered-by predecessors, canonical order
  std::vector<int> cover_succs(int x) const;
  std::vector<int> down_set(int x) const;  // {y | y <= x}, canonical order
  std::vector<int> up_set(int x) const;    // {y | x <= y}, canonical order
  std::vector<int> minimal_of(std::span<const int> subset) const;
  std::vector<int> maximal_of(std::span<const int> subset) const;
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  int max_chain_elements() const;  // element count of a longest chain

  PosetPtr dualized() const;

  // Shape of the grid representation, if this poset is one. `reversed` grids
  // are the duals produced by dualized().
  struct GridShape {
    int q;
    int arity;
    bool reversed;
  };
  std::optional<GridShape> grid_shape() const;
  bool is_cube() const;        // unreversed grid with q == 2
  bool is_chain_like() const;  // every pair comparable

  bool same_order_as(const Poset& other) const;

 private:
  Poset() = default;

  struct Table {
    std::vector<std::string> ids;
    std::unordered_map<std::string, int> index;
    std::vector<bool> leq;  // row-major size*size
    std::vector<std::pair<int, int>> covers;
  };
  struct Grid {
    int q = 2;
    int arity = 1;
    bool reversed = false;
  };

  int grid_digit(int index, int j) const;  // j in [0, arity), most significant first
  std::vector<int> grid_cone(int x, bool below) const;

  int size_ = 0;
  bool is_grid_ = false;
  Table table_;
  Grid grid_;
};

// Total map between two posets, stored as a table of codomain indices.
class PosetMap {
 public:
  PosetMap(PosetPtr domain, PosetPtr codomain, std::vector<int> table);

  const Poset& domain() const { return *domain_; }
  const Poset& codomain() const { return *codomain_; }
  const PosetPtr& domain_ptr() const { return domain_; }
  const PosetPtr& codomain_ptr() const { return codomain_; }

  int at(int x) const { return table_[static_cast<size_t>(x)]; }
  std::span<const int> table() const { return table_; }

  bool same_table(const PosetMap& other) const { return table_ == other.table_; }

 private:
  PosetPtr domain_;
  PosetPtr codomain_;
  std::vector<int> table_;
};

// The comparable pairs (m, m') with m <= m' on which a map breaks order
// preservation. Empty iff the map is monotone.
struct NonMonoDomain {
  std::vector<std::pair<int, int>> pairs;  // sorted canonically by (m, m')
  bool empty() const { return pairs.empty(); }
};

struct MonotoneVerdict {
  bool monotone;
  std::optional<std::pair<int, int>> witness;
};

NonMonoDomain nonmono_domain(const PosetMap& f);
MonotoneVerdict is_monotone(const PosetMap& f);

// x -> characteristic vector of down_set(x) over the canonical enumeration;
// an order embedding into B^{|p|}, verified before returning.
PosetMap embed_into_cube(const PosetPtr& p);

}  // namespace monoforms
