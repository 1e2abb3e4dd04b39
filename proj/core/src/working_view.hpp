#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "monoforms/algebra.hpp"
#include "monoforms/order.hpp"

namespace monoforms::detail {

// Domain accessors under the working order: the stated order for primal
// algebras, the reversed one for dual algebras. One engine serves both
// orientations.
struct WorkingView {
  const Poset& p;
  bool flip;

  bool leq(int a, int b) const { return flip ? p.leq(b, a) : p.leq(a, b); }
  std::vector<int> down(int x) const { return flip ? p.up_set(x) : p.down_set(x); }
  std::vector<int> up(int x) const { return flip ? p.down_set(x) : p.up_set(x); }
  std::vector<int> cover_preds(int x) const {
    return flip ? p.cover_succs(x) : p.cover_preds(x);
  }
  std::vector<int> minimal_of(const std::vector<int>& s) const {
    return flip ? p.maximal_of(s) : p.minimal_of(s);
  }
};

inline WorkingView working_view(const Poset& p, const Algebra& alg) {
  return WorkingView{p, alg.orientation() == Orientation::dual};
}

// Pairs violating order preservation in the working sense, sorted
// canonically.
inline std::vector<std::pair<int, int>> working_nonmono(const WorkingView& dv,
                                                        const Algebra& alg,
                                                        const std::vector<int>& table) {
  std::vector<std::pair<int, int>> pairs;
  for (int b = 0; b < dv.p.size(); ++b)
    for (int a : dv.down(b))
      if (a != b && !alg.working_leq(table[a], table[b])) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// A linear extension of the working order: every element appears after all
// of its working cover predecessors.
inline std::vector<int> working_linear_extension(const WorkingView& dv) {
  const int n = dv.p.size();
  std::vector<int> order(static_cast<size_t>(n));
  if (auto shape = dv.p.grid_shape()) {
    // Canonical index order is a linear extension of an unreversed grid;
    // the poset's own reversal and the view flip each turn it around.
    bool descending = shape->reversed != dv.flip;
    for (int i = 0; i < n; ++i)
      order[static_cast<size_t>(i)] = descending ? n - 1 - i : i;
    return order;
  }
  std::vector<int> indegree(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> succs(static_cast<size_t>(n));
  for (const auto& [a, b] : dv.p.cover_pairs()) {
    int from = dv.flip ? b : a;
    int to = dv.flip ? a : b;
    succs[static_cast<size_t>(from)].push_back(to);
    ++indegree[static_cast<size_t>(to)];
  }
  std::vector<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[static_cast<size_t>(i)] == 0) ready.push_back(i);
  size_t filled = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order[filled++] = v;
    for (int to : succs[static_cast<size_t>(v)])
      if (--indegree[static_cast<size_t>(to)] == 0) ready.push_back(to);
  }
  return order;
}

// Upward closure in the working order: marks everything above a marked
// element, one pass along a linear extension.
inline void working_up_close(const WorkingView& dv, const std::vector<int>& extension,
                             std::vector<char>& marked) {
  for (int z : extension) {
    if (marked[static_cast<size_t>(z)]) continue;
    for (int p : dv.cover_preds(z))
      if (marked[static_cast<size_t>(p)]) {
        marked[static_cast<size_t>(z)] = 1;
        break;
      }
  }
}

}  // namespace monoforms::detail
