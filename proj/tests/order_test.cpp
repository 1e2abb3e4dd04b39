#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "monoforms/order.hpp"
#include "monoforms/selftest.hpp"
#include "test_util.hpp"

using namespace monoforms;
using testutil::caught_errc;

TEST_SUITE_BEGIN("order");

TEST_CASE("single point poset") {
  auto p = Poset::from_covers({"a"}, {});
  CHECK(p->size() == 1);
  CHECK(p->leq(0, 0));
  CHECK(p->cover_pairs().empty());
}

TEST_CASE("chain closure forces transitivity") {
  auto p = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p->leq(p->index_of("a"), p->index_of("c")));
  CHECK(!p->leq(p->index_of("c"), p->index_of("a")));
  CHECK(p->cover_pairs().size() == 2);
}

TEST_CASE("cycle is rejected") {
  auto code = caught_errc([] { Poset::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}); });
  REQUIRE(code.has_value());
  CHECK(*code == errc::cycle_detected);
}

TEST_CASE("unknown and duplicate ids are rejected") {
  CHECK(*caught_errc([] { Poset::from_covers({"a"}, {{"a", "zz"}}); }) == errc::unknown_element);
  CHECK(*caught_errc([] { Poset::from_covers({"a", "a"}, {}); }) == errc::duplicate_element);
}

TEST_CASE("redundant cover input is reduced") {
  auto p = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(p->cover_pairs() ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("boolean cube shapes") {
  auto b1 = Poset::boolean_cube(1);
  CHECK(b1->size() == 2);
  CHECK(b1->leq(0, 1));
  CHECK(!b1->leq(1, 0));

  auto b2 = Poset::boolean_cube(2);
  int lo = b2->index_of("00"), a = b2->index_of("01"), b = b2->index_of("10"),
      hi = b2->index_of("11");
  CHECK(b2->leq(lo, a));
  CHECK(b2->leq(lo, b));
  CHECK(b2->leq(a, hi));
  CHECK(!b2->leq(a, b));
  CHECK(!b2->leq(b, a));

  CHECK(Poset::boolean_cube(3)->max_chain_elements() == 4);
  CHECK(*caught_errc([] { Poset::boolean_cube(0); }) == errc::arity_out_of_range);
  CHECK(*caught_errc([] { Poset::boolean_cube(17); }) == errc::arity_out_of_range);
}

TEST_CASE("cube indices follow the most significant bit convention") {
  auto b3 = Poset::boolean_cube(3);
  CHECK(b3->element(4) == "100");
  CHECK(b3->element(1) == "001");
  CHECK(b3->index_of("101") == 5);
}

TEST_CASE("down and up sets") {
  auto b2 = Poset::boolean_cube(2);
  CHECK(b2->down_set(b2->index_of("10")) ==
        std::vector<int>{b2->index_of("00"), b2->index_of("10")});
  CHECK(b2->up_set(b2->index_of("01")) ==
        std::vector<int>{b2->index_of("01"), b2->index_of("11")});

  auto chain = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(chain->down_set(2) == std::vector<int>{0, 1, 2});
  CHECK(*caught_errc([&] { chain->down_set(7); }) == errc::unknown_element);
}

TEST_CASE("minimal elements of a subset") {
  auto b2 = Poset::boolean_cube(2);
  std::vector<int> s = {b2->index_of("01"), b2->index_of("10"), b2->index_of("11")};
  CHECK(b2->minimal_of(s) == std::vector<int>{b2->index_of("01"), b2->index_of("10")});

  std::vector<int> single = {2};
  CHECK(b2->minimal_of(single) == std::vector<int>{2});

  auto chain = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  std::vector<int> bc = {1, 2};
  CHECK(chain->minimal_of(bc) == std::vector<int>{1});
}

TEST_CASE("longest chain element counts") {
  CHECK(Poset::boolean_cube(2)->max_chain_elements() == 3);
  auto antichain = Poset::from_covers({"a", "b", "c", "d", "e"}, {});
  CHECK(antichain->max_chain_elements() == 1);
  for (int n = 1; n <= 6; ++n)
    CHECK(Poset::boolean_cube(n)->max_chain_elements() == n + 1);
}

namespace {

// Brute-force order-isomorphism search, test-side oracle for self-duality.
bool order_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return false;
  std::vector<int> perm(static_cast<size_t>(p.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < p.size() && ok; ++a)
      for (int b = 0; b < p.size() && ok; ++b)
        if (p.leq(a, b) != q.leq(perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]))
          ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("dualize reverses and is an involution") {
  auto chain = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto dual = chain->dualized();
  CHECK(dual->leq(2, 0));
  CHECK(!dual->leq(0, 2));
  CHECK(dual->dualized()->same_order_as(*chain));

  auto single = Poset::from_covers({"a"}, {});
  CHECK(single->dualized()->same_order_as(*single));
}

TEST_CASE("the square cube is self-dual") {
  auto b2 = Poset::boolean_cube(2);
  CHECK(order_isomorphic(*b2, *b2->dualized()));
}

TEST_CASE("monotonicity verdicts") {
  auto b2 = Poset::boolean_cube(2);
  auto levels = Poset::chain(2);

  PosetMap and_map(b2, levels, {0, 0, 0, 1});
  CHECK(is_monotone(and_map).monotone);

  PosetMap xor_map(b2, levels, {0, 1, 1, 0});
  auto verdict = is_monotone(xor_map);
  REQUIRE(!verdict.monotone);
  CHECK(b2->element(verdict.witness->first) == "01");
  CHECK(b2->element(verdict.witness->second) == "11");

  PosetMap constant(b2, levels, {1, 1, 1, 1});
  CHECK(is_monotone(constant).monotone);
}

TEST_CASE("non-monotonicity domains") {
  auto b2 = Poset::boolean_cube(2);
  auto b1 = Poset::boolean_cube(1);
  auto levels = Poset::chain(2);

  PosetMap xor_map(b2, levels, {0, 1, 1, 0});
  NonMonoDomain nm = nonmono_domain(xor_map);
  CHECK(nm.pairs == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}});
  CHECK(nm.pairs == testutil::naive_nonmono(xor_map));

  PosetMap and_map(b2, levels, {0, 0, 0, 1});
  CHECK(nonmono_domain(and_map).empty());

  PosetMap neg(b1, levels, {1, 0});
  CHECK(nonmono_domain(neg).pairs == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("embedding into the cube") {
  auto chain = Poset::from_covers({"a", "b"}, {{"a", "b"}});
  PosetMap f = embed_into_cube(chain);
  CHECK(f.codomain().element(f.at(0)) == "10");
  CHECK(f.codomain().element(f.at(1)) == "11");

  auto antichain = Poset::from_covers({"a", "b"}, {});
  PosetMap g = embed_into_cube(antichain);
  CHECK(g.codomain().element(g.at(0)) == "10");
  CHECK(g.codomain().element(g.at(1)) == "01");
  CHECK(!g.codomain().leq(g.at(0), g.at(1)));
  CHECK(!g.codomain().leq(g.at(1), g.at(0)));

  auto single = Poset::from_covers({"a"}, {});
  PosetMap h = embed_into_cube(single);
  CHECK(h.codomain().element(h.at(0)) == "1");
}

TEST_CASE("grid posets with larger bases") {
  auto g = Poset::grid(3, 2);
  CHECK(g->size() == 9);
  CHECK(g->element(5) == "12");
  CHECK(g->index_of("21") == 7);
  CHECK(g->leq(g->index_of("01"), g->index_of("21")));
  CHECK(!g->leq(g->index_of("12"), g->index_of("21")));
  CHECK(g->max_chain_elements() == 5);

  auto wide = Poset::grid(12, 2);
  CHECK(wide->element(13) == "1,1");
  CHECK(wide->index_of("11,0") == 132);
}

TEST_CASE("grid cones agree with a relation scan") {
  for (PosetPtr p : {Poset::grid(3, 2), Poset::boolean_cube(3), Poset::grid(4, 2)->dualized(),
                     Poset::boolean_cube(2)->dualized()}) {
    for (int x = 0; x < p->size(); ++x) {
      std::vector<int> down_scan, up_scan;
      for (int y = 0; y < p->size(); ++y) {
        if (p->leq(y, x)) down_scan.push_back(y);
        if (p->leq(x, y)) up_scan.push_back(y);
      }
      CHECK(p->down_set(x) == down_scan);
      CHECK(p->up_set(x) == up_scan);
    }
  }
}

TEST_CASE("grid covers agree with a relation scan") {
  for (PosetPtr p : {Poset::grid(3, 2), Poset::boolean_cube(3)->dualized()}) {
    std::vector<std::pair<int, int>> scan;
    for (int a = 0; a < p->size(); ++a)
      for (int b = 0; b < p->size(); ++b) {
        if (a == b || !p->leq(a, b)) continue;
        bool between = false;
        for (int c = 0; c < p->size() && !between; ++c)
          between = c != a && c != b && p->leq(a, c) && p->leq(c, b);
        if (!between) scan.emplace_back(a, b);
      }
    CHECK(p->cover_pairs() == scan);
  }
}

TEST_CASE("a sixteen element chain embeds into the full-width cube") {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < 16; ++i) {
    ids.push_back("v" + std::to_string(i));
    if (i > 0) covers.emplace_back("v" + std::to_string(i - 1), "v" + std::to_string(i));
  }
  auto p = Poset::from_covers(ids, covers);
  PosetMap f = embed_into_cube(p);
  CHECK(f.codomain().size() == 65536);
  for (int x = 0; x + 1 < p->size(); ++x)
    CHECK(f.codomain().leq(f.at(x), f.at(x + 1)));

  auto big = Poset::from_covers([] {
    std::vector<std::string> v;
    for (int i = 0; i < 17; ++i) v.push_back("w" + std::to_string(i));
    return v;
  }(), {});
  CHECK(*caught_errc([&] { embed_into_cube(big); }) == errc::arity_out_of_range);
}

TEST_CASE("random posets satisfy the order axioms") {
  selftest::Rng rng(41);
  for (int round = 0; round < 40; ++round) {
    PosetPtr p = selftest::random_poset(rng, 9);
    const int n = p->size();
    for (int a = 0; a < n; ++a) {
      CHECK(p->leq(a, a));
      for (int b = 0; b < n; ++b) {
        if (a != b && p->leq(a, b)) CHECK(!p->leq(b, a));
        for (int c = 0; c < n; ++c)
          if (p->leq(a, b) && p->leq(b, c)) CHECK(p->leq(a, c));
      }
    }
  }
}

TEST_CASE("order agrees with down-set inclusion") {
  selftest::Rng rng(42);
  for (int round = 0; round < 25; ++round) {
    PosetPtr p = selftest::random_poset(rng, 9);
    for (int x = 0; x < p->size(); ++x) {
      auto dx = p->down_set(x);
      for (int y = 0; y < p->size(); ++y) {
        auto dy = p->down_set(y);
        bool included = std::includes(dy.begin(), dy.end(), dx.begin(), dx.end());
        CHECK(p->leq(x, y) == included);
      }
    }
  }
}

TEST_CASE("monotone verdicts match the domain scan") {
  selftest::Rng rng(43);
  auto levels = Poset::chain(3);
  for (int round = 0; round < 50; ++round) {
    PosetPtr p = selftest::random_poset(rng, 8);
    PosetMap f = selftest::random_map(rng, p, levels);
    CHECK(is_monotone(f).monotone == nonmono_domain(f).empty());
    CHECK(nonmono_domain(f).pairs == testutil::naive_nonmono(f));
  }
}

TEST_CASE("random posets embed into their cube") {
  selftest::Rng rng(44);
  for (int round = 0; round < 30; ++round) {
    PosetPtr p = selftest::random_poset(rng, 8);
    PosetMap f = embed_into_cube(p);
    for (int x = 0; x < p->size(); ++x)
      for (int y = 0; y < p->size(); ++y)
        CHECK(p->leq(x, y) == f.codomain().leq(f.at(x), f.at(y)));
  }
}

TEST_CASE("minimal elements dominate their subset as an antichain") {
  selftest::Rng rng(45);
  for (int round = 0; round < 30; ++round) {
    PosetPtr p = selftest::random_poset(rng, 8);
    std::vector<int> subset;
    for (int x = 0; x < p->size(); ++x)
      if (rng.next(2) == 0) subset.push_back(x);
    if (subset.empty()) continue;
    auto frontier = p->minimal_of(subset);
    for (int s : subset) {
      bool dominated = false;
      for (int f : frontier) dominated = dominated || p->leq(f, s);
      CHECK(dominated);
    }
    for (int f1 : frontier)
      for (int f2 : frontier)
        if (f1 != f2) CHECK(!p->leq(f1, f2));
  }
}

TEST_SUITE_END();
