#include "monoforms/order.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>

namespace monoforms {

namespace {

int checked_q_pow(int q, int n) {
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= q;
    if (total > (1 << Poset::max_cube_arity))
      throw error(errc::arity_out_of_range,
                  "grid with q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                      " exceeds 2^16 elements");
  }
  return static_cast<int>(total);
}

}  // namespace

PosetPtr Poset::from_covers(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& covers) {
  const int n = static_cast<int>(elements.size());
  if (n > max_table_size)
    throw error(errc::domain_too_large,
                "poset has " + std::to_string(n) + " elements, cap is " +
                    std::to_string(max_table_size));

  auto p = std::shared_ptr<Poset>(new Poset());
  p->size_ = n;
  p->table_.ids = std::move(elements);
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = p->table_.index.emplace(p->table_.ids[i], i);
    if (!inserted)
      throw error(errc::duplicate_element, "duplicate element id '" + p->table_.ids[i] + "'",
                  {p->table_.ids[i]});
  }

  std::vector<std::vector<int>> succs(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [lo, hi] : covers) {
    int a = p->index_of(lo);
    int b = p->index_of(hi);
    if (a == b) throw error(errc::cycle_detected, "self-loop on '" + lo + "'", {lo});
    succs[a].push_back(b);
    ++indeg[b];
  }

  // Kahn's algorithm: a leftover vertex means a directed cycle.
  std::deque<int> ready;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::vector<int> topo;
  topo.reserve(n);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    topo.push_back(v);
    for (int w : succs[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (static_cast<int>(topo.size()) != n) {
    std::vector<std::string> cyc;
    for (int i = 0; i < n; ++i)
      if (indeg[i] > 0) cyc.push_back(p->table_.ids[i]);
    throw error(errc::cycle_detected, "cover relation has a directed cycle", cyc);
  }

  // Transitive closure in reverse topological order.
  auto& leq = p->table_.leq;
  leq.assign(static_cast<size_t>(n) * n, false);
  auto set_leq = [&](int a, int b) { leq[static_cast<size_t>(a) * n + b] = true; };
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int v = *it;
    set_leq(v, v);
    for (int w : succs[v])
      for (int c = 0; c < n; ++c)
        if (leq[static_cast<size_t>(w) * n + c]) set_leq(v, c);
  }

  // Transitive reduction of the input: keep (a, b) iff nothing sits between.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !p->leq(a, b)) continue;
      bool has_between = false;
      for (int c = 0; c < n && !has_between; ++c)
        has_between = c != a && c != b && p->leq(a, c) && p->leq(c, b);
      if (!has_between) p->table_.covers.emplace_back(a, b);
    }
  }
  std::sort(p->table_.covers.begin(), p->table_.covers.end());
  return p;
}

PosetPtr Poset::boolean_cube(int arity) {
  if (arity < 1 || arity > max_cube_arity)
    throw error(errc::arity_out_of_range,
                "cube arity " + std::to_string(arity) + " not in [1, 16]");
  return grid(2, arity);
}

PosetPtr Poset::chain(int q) {
  if (q < 1 || q > (1 << max_cube_arity))
    throw error(errc::chain_size_out_of_range, "chain size " + std::to_string(q));
  return grid(q, 1);
}

PosetPtr Poset::grid(int q, int arity) {
  if (q < 1) throw error(errc::chain_size_out_of_range, "grid base " + std::to_string(q));
  if (arity < 1) throw error(errc::arity_out_of_range, "grid arity " + std::to_string(arity));
  auto p = std::shared_ptr<Poset>(new Poset());
  p->size_ = checked_q_pow(q, arity);
  p->is_grid_ = true;
  p->grid_.q = q;
  p->grid_.arity = arity;
  p->grid_.reversed = false;
  return p;
}

int Poset::grid_digit(int index, int j) const {
  int div = 1;
  for (int k = grid_.arity - 1; k > j; --k) div *= grid_.q;
  return (index / div) % grid_.q;
}

std::string Poset::element(int i) const {
  if (i < 0 || i >= size_)
    throw error(errc::unknown_element, "element index " + std::to_string(i) + " out of range");
  if (!is_grid_) return table_.ids[i];
  if (grid_.arity == 1) return std::to_string(i);
  std::string id;
  const bool comma = grid_.q > 10;
  for (int j = 0; j < grid_.arity; ++j) {
    if (comma && j > 0) id += ',';
    id += std::to_string(grid_digit(i, j));
  }
  return id;
}

int Poset::index_of(std::string_view id) const {
  if (!is_grid_) {
    auto it = table_.index.find(std::string(id));
    if (it == table_.index.end())
      throw error(errc::unknown_element, "unknown element '" + std::string(id) + "'",
                  {std::string(id)});
    return it->second;
  }
  auto fail = [&] {
    return error(errc::unknown_element, "unknown element '" + std::string(id) + "'",
                 {std::string(id)});
  };
  auto parse_int = [&](std::string_view tok) {
    int v = -1;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0 || v >= grid_.q)
      throw fail();
    return v;
  };
  if (grid_.arity == 1) return parse_int(id);
  int index = 0;
  if (grid_.q > 10) {
    size_t pos = 0;
    for (int j = 0; j < grid_.arity; ++j) {
      size_t next = id.find(',', pos);
      bool last = j + 1 == grid_.arity;
      if (last != (next == std::string_view::npos)) throw fail();
      std::string_view tok = last ? id.substr(pos) : id.substr(pos, next - pos);
      index = index * grid_.q + parse_int(tok);
      pos = last ? id.size() : next + 1;
    }
    return index;
  }
  if (static_cast<int>(id.size()) != grid_.arity) throw fail();
  for (char c : id) {
    if (c < '0' || c >= '0' + grid_.q) throw fail();
    index = index * grid_.q + (c - '0');
  }
  return index;
}

bool Poset::leq(int a, int b) const {
  if (!is_grid_) return table_.leq[static_cast<size_t>(a) * size_ + b];
  if (grid_.reversed) std::swap(a, b);
  if (grid_.arity == 1) return a <= b;
  if (grid_.q == 2) return (a & b) == a;
  for (int j = 0; j < grid_.arity; ++j)
    if (grid_digit(a, j) > grid_digit(b, j)) return false;
  return true;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  if (!is_grid_) return table_.covers;
  // Grid covers: increment one coordinate by one.
  std::vector<std::pair<int, int>> covers;
  std::vector<int> places(grid_.arity);
  int place = 1;
  for (int j = grid_.arity - 1; j >= 0; --j) {
    places[j] = place;
    place *= grid_.q;
  }
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < grid_.arity; ++j)
      if (grid_digit(i, j) + 1 < grid_.q) {
        int succ = i + places[j];
        if (grid_.reversed)
          covers.emplace_back(succ, i);
        else
          covers.emplace_back(i, succ);
      }
  std::sort(covers.begin(), covers.end());
  return covers;
}

std::vector<int> Poset::cover_preds(int x) const {
  std::vector<int> preds;
  if (is_grid_) {
    int place = 1;
    for (int j = grid_.arity - 1; j >= 0; --j) {
      int digit = grid_digit(x, j);
      bool can_step = grid_.reversed ? digit + 1 < grid_.q : digit > 0;
      if (can_step) preds.push_back(grid_.reversed ? x + place : x - place);
      place *= grid_.q;
    }
    std::sort(preds.begin(), preds.end());
    return preds;
  }
  for (const auto& [a, b] : table_.covers)
    if (b == x) preds.push_back(a);
  return preds;
}

std::vector<int> Poset::cover_succs(int x) const {
  std::vector<int> succs;
  if (is_grid_) {
    int place = 1;
    for (int j = grid_.arity - 1; j >= 0; --j) {
      int digit = grid_digit(x, j);
      bool can_step = grid_.reversed ? digit > 0 : digit + 1 < grid_.q;
      if (can_step) succs.push_back(grid_.reversed ? x - place : x + place);
      place *= grid_.q;
    }
    std::sort(succs.begin(), succs.end());
    return succs;
  }
  for (const auto& [a, b] : table_.covers)
    if (a == x) succs.push_back(b);
  std::sort(succs.begin(), succs.end());
  return succs;
}

// Enumerates the cone below (or above) x on a grid by running an odometer
// over per-digit ranges; lexicographic digit order is already ascending
// index order, so the output needs no sort.
std::vector<int> Poset::grid_cone(int x, bool below) const {
  const int k = grid_.arity;
  std::vector<int> lo(k), hi(k), cur(k), place(k);
  size_t count = 1;
  int p = 1;
  for (int j = k - 1; j >= 0; --j) {
    place[j] = p;
    p *= grid_.q;
  }
  int index = 0;
  for (int j = 0; j < k; ++j) {
    int d = grid_digit(x, j);
    lo[j] = below ? 0 : d;
    hi[j] = below ? d : grid_.q - 1;
    cur[j] = lo[j];
    index += lo[j] * place[j];
    count *= static_cast<size_t>(hi[j] - lo[j] + 1);
  }
  std::vector<int> result;
  result.reserve(count);
  while (true) {
    result.push_back(index);
    int j = k - 1;
    while (j >= 0 && cur[j] == hi[j]) {
      index -= (cur[j] - lo[j]) * place[j];
      cur[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++cur[j];
    index += place[j];
  }
  return result;
}

std::vector<int> Poset::down_set(int x) const {
  if (x < 0 || x >= size_)
    throw error(errc::unknown_element, "element index " + std::to_string(x) + " out of range");
  if (is_grid_) return grid_cone(x, !grid_.reversed);
  std::vector<int> result;
  for (int y = 0; y < size_; ++y)
    if (leq(y, x)) result.push_back(y);
  return result;
}

std::vector<int> Poset::up_set(int x) const {
  if (x < 0 || x >= size_)
    throw error(errc::unknown_element, "element index " + std::to_string(x) + " out of range");
  if (is_grid_) return grid_cone(x, grid_.reversed);
  std::vector<int> result;
  for (int y = 0; y < size_; ++y)
    if (leq(x, y)) result.push_back(y);
  return result;
}

std::vector<int> Poset::minimal_of(std::span<const int> subset) const {
  std::vector<int> result;
  for (int s : subset) {
    if (s < 0 || s >= size_)
      throw error(errc::unknown_element, "element index " + std::to_string(s) + " out of range");
    bool minimal = true;
    for (int t : subset)
      if (t != s && leq(t, s) && !leq(s, t)) {
        minimal = false;
        break;
      }
    if (minimal) result.push_back(s);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<int> Poset::maximal_of(std::span<const int> subset) const {
  std::vector<int> result;
  for (int s : subset) {
    if (s < 0 || s >= size_)
      throw error(errc::unknown_element, "element index " + std::to_string(s) + " out of range");
    bool maximal = true;
    for (int t : subset)
      if (t != s && leq(s, t) && !leq(t, s)) {
        maximal = false;
        break;
      }
    if (maximal) result.push_back(s);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> all(size_);
  for (int i = 0; i < size_; ++i) all[i] = i;
  return minimal_of(all);
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> all(size_);
  for (int i = 0; i < size_; ++i) all[i] = i;
  return maximal_of(all);
}

int Poset::max_chain_elements() const {
  if (is_grid_) return grid_.arity * (grid_.q - 1) + 1;
  // Longest chain ending at x, walked over the cover digraph.
  std::vector<int> height(size_, 0);
  std::vector<std::vector<int>> preds(size_);
  for (const auto& [a, b] : table_.covers) preds[b].push_back(a);
  std::function<int(int)> chain_to = [&](int x) {
    if (height[x] != 0) return height[x];
    int best = 1;
    for (int p : preds[x]) best = std::max(best, chain_to(p) + 1);
    return height[x] = best;
  };
  int best = size_ == 0 ? 0 : 1;
  for (int x = 0; x < size_; ++x) best = std::max(best, chain_to(x));
  return best;
}

PosetPtr Poset::dualized() const {
  auto p = std::shared_ptr<Poset>(new Poset());
  p->size_ = size_;
  if (is_grid_) {
    p->is_grid_ = true;
    p->grid_ = grid_;
    p->grid_.reversed = !grid_.reversed;
    return p;
  }
  p->table_.ids = table_.ids;
  p->table_.index = table_.index;
  p->table_.leq.assign(static_cast<size_t>(size_) * size_, false);
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      p->table_.leq[static_cast<size_t>(a) * size_ + b] =
          table_.leq[static_cast<size_t>(b) * size_ + a];
  for (const auto& [a, b] : table_.covers) p->table_.covers.emplace_back(b, a);
  std::sort(p->table_.covers.begin(), p->table_.covers.end());
  return p;
}

std::optional<Poset::GridShape> Poset::grid_shape() const {
  if (!is_grid_) return std::nullopt;
  return GridShape{grid_.q, grid_.arity, grid_.reversed};
}

bool Poset::is_cube() const { return is_grid_ && grid_.q == 2 && !grid_.reversed; }

bool Poset::is_chain_like() const {
  if (is_grid_) return grid_.arity == 1 || grid_.q == 1;
  for (int a = 0; a < size_; ++a)
    for (int b = a + 1; b < size_; ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

bool Poset::same_order_as(const Poset& other) const {
  if (size_ != other.size_) return false;
  if (is_grid_ && other.is_grid_ && grid_.q == other.grid_.q &&
      grid_.arity == other.grid_.arity && grid_.reversed == other.grid_.reversed)
    return true;
  for (int a = 0; a < size_; ++a) {
    if (element(a) != other.element(a)) return false;
    for (int b = 0; b < size_; ++b)
      if (leq(a, b) != other.leq(a, b)) return false;
  }
  return true;
}

PosetMap::PosetMap(PosetPtr domain, PosetPtr codomain, std::vector<int> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != domain_->size())
    throw error(errc::table_shape_mismatch,
                "map table has " + std::to_string(table_.size()) + " entries for a domain of " +
                    std::to_string(domain_->size()));
  for (int v : table_)
    if (v < 0 || v >= codomain_->size())
      throw error(errc::unknown_element,
                  "map value index " + std::to_string(v) + " out of range");
}

NonMonoDomain nonmono_domain(const PosetMap& f) {
  NonMonoDomain result;
  const Poset& m = f.domain();
  const Poset& l = f.codomain();
  for (int b = 0; b < m.size(); ++b)
    for (int a : m.down_set(b))
      if (a != b && !l.leq(f.at(a), f.at(b))) result.pairs.emplace_back(a, b);
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

MonotoneVerdict is_monotone(const PosetMap& f) {
  const Poset& m = f.domain();
  const Poset& l = f.codomain();
  for (int b = 0; b < m.size(); ++b)
    for (int a : m.down_set(b))
      if (a != b && !l.leq(f.at(a), f.at(b))) return {false, std::make_pair(a, b)};
  return {true, std::nullopt};
}

PosetMap embed_into_cube(const PosetPtr& p) {
  const int n = p->size();
  if (n > Poset::max_cube_arity)
    throw error(errc::arity_out_of_range,
                "cannot embed " + std::to_string(n) + " elements into a cube of arity <= 16");
  auto cube = Poset::boolean_cube(n);
  std::vector<int> table(n, 0);
  for (int x = 0; x < n; ++x) {
    int image = 0;
    for (int e = 0; e < n; ++e)
      if (p->leq(e, x)) image |= 1 << (n - 1 - e);
    table[x] = image;
  }
  PosetMap f(p, cube, std::move(table));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p->leq(x, y) != cube->leq(f.at(x), f.at(y)))
        throw error(errc::shape_mismatch, "embedding failed the order-embedding check",
                    {p->element(x), p->element(y)});
  return f;
}

}  // namespace monoforms
