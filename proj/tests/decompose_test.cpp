#include <doctest.h>

#include <algorithm>

#include "monoforms/decompose.hpp"
#include "monoforms/selftest.hpp"
#include "test_util.hpp"

using namespace monoforms;
using testutil::caught_errc;

TEST_SUITE_BEGIN("decompose");

namespace {

// Test-side recomposition oracle working straight off the raw tables, kept
// independent of recompose().
std::vector<int> fold_tables(const std::vector<std::vector<int>>& parts, const Algebra& alg) {
  std::vector<int> acc = parts.back();
  for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i)
    for (size_t x = 0; x < acc.size(); ++x) acc[x] = alg.compose(parts[i][x], acc[x]);
  return acc;
}

std::vector<std::vector<int>> part_tables(const ApproximatingForm& form) {
  std::vector<std::vector<int>> tables;
  for (const PosetMap& part : form.parts)
    tables.emplace_back(part.table().begin(), part.table().end());
  return tables;
}

}  // namespace

TEST_CASE("monotone input yields a single part") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("boolean-primal");
  PosetMap and_map(cube, alg.levels_ptr(), {0, 0, 0, 1});
  DecomposeResult result = decompose(and_map, alg, Strategy::t1);
  CHECK(result.form.parts.size() == 1);
  CHECK(result.form.compose_ops() == 0);
  CHECK(result.form.parts.front().same_table(and_map));
  CHECK(result.trace.steps.empty());
}

TEST_CASE("negation peels into a constant and the identity") {
  auto line = Poset::boolean_cube(1);
  Algebra alg = Algebra::builtin("boolean-primal");
  PosetMap neg(line, alg.levels_ptr(), {1, 0});
  DecomposeResult result = decompose(neg, alg, Strategy::t1);
  REQUIRE(result.form.parts.size() == 2);
  CHECK(part_tables(result.form) == std::vector<std::vector<int>>{{1, 1}, {0, 1}});
  CHECK(recompose(result.form, alg).same_table(neg));
  CHECK(fold_tables(part_tables(result.form), alg) == std::vector<int>{1, 0});
}

TEST_CASE("xor under the dual boolean algebra") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("boolean-dual");
  PosetMap xor_map(cube, alg.levels_ptr(), {0, 1, 1, 0});
  DecomposeResult result = decompose(xor_map, alg, Strategy::t1);
  REQUIRE(result.form.parts.size() == 3);
  // const 0, then and, then or as the final residual
  CHECK(part_tables(result.form) ==
        std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 1, 1}});
  CHECK(result.form.compose_ops() == 2);
  CHECK(recompose(result.form, alg).same_table(xor_map));
  CHECK(fold_tables(part_tables(result.form), alg) == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("recompose folds a single part to itself") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("boolean-primal");
  ApproximatingForm form;
  form.orientation = Orientation::primal;
  form.domain = cube;
  form.codomain = alg.levels_ptr();
  form.parts.emplace_back(cube, alg.levels_ptr(), std::vector<int>{0, 1, 1, 1});
  CHECK(recompose(form, alg).same_table(form.parts.front()));
}

TEST_CASE("verify_form accepts the produced form and spots tampering") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("boolean-dual");
  PosetMap xor_map(cube, alg.levels_ptr(), {0, 1, 1, 0});
  DecomposeResult result = decompose(xor_map, alg, Strategy::t1);

  FormCheck good = verify_form(result.form, xor_map, alg);
  CHECK(good.passed);

  PosetMap xnor(cube, alg.levels_ptr(), {1, 0, 0, 1});
  FormCheck mismatch = verify_form(result.form, xnor, alg);
  CHECK(!mismatch.passed);
  CHECK(mismatch.parts_monotone);
  REQUIRE(mismatch.mismatch_element.has_value());
  CHECK(*mismatch.mismatch_element == "00");

  ApproximatingForm tampered = result.form;
  tampered.parts[1] = PosetMap(cube, alg.levels_ptr(), {0, 1, 0, 0});  // not monotone
  FormCheck bad_part = verify_form(tampered, xor_map, alg);
  CHECK(!bad_part.passed);
  CHECK(!bad_part.parts_monotone);
  REQUIRE(bad_part.bad_part.has_value());
  CHECK(*bad_part.bad_part == 1);
  REQUIRE(bad_part.bad_part_witness.has_value());
}

TEST_CASE("form statistics") {
  auto cube = Poset::boolean_cube(2);
  Algebra dual = Algebra::builtin("boolean-dual");
  PosetMap xor_map(cube, dual.levels_ptr(), {0, 1, 1, 0});
  FormStats stats = form_stats(decompose(xor_map, dual, Strategy::t1).form);
  CHECK(stats.parts == 3);
  CHECK(stats.compose_ops == 2);
  CHECK(stats.domain_chain_elements == 3);
  CHECK(stats.bound_ok);

  auto line = Poset::boolean_cube(1);
  Algebra primal = Algebra::builtin("boolean-primal");
  PosetMap neg(line, primal.levels_ptr(), {1, 0});
  FormStats neg_stats = form_stats(decompose(neg, primal, Strategy::t1).form);
  CHECK(neg_stats.compose_ops == 1);
  CHECK(neg_stats.domain_chain_elements == 2);
}

TEST_CASE("residual non-monotonicity can grow while the M sequence shrinks") {
  // Chain c0<c1<c2<c3 into a 4-chain: step one retires the pairs rooted at
  // c0 but leaves a residual whose bad pairs are new and more numerous. The
  // decomposition still verifies; progress lives in the M sets, not in n.
  auto chain = Poset::from_covers({"c0", "c1", "c2", "c3"},
                                  {{"c0", "c1"}, {"c1", "c2"}, {"c2", "c3"}});
  Algebra alg = Algebra::builtin("chain-primal:4");
  PosetMap psi(chain, alg.levels_ptr(), {3, 0, 2, 3});
  DecomposeResult result = decompose(psi, alg, Strategy::t1);

  REQUIRE(result.trace.steps.size() == 2);
  CHECK(result.trace.steps[0].nonmono ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(result.trace.steps[1].nonmono ==
        std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(result.trace.steps[0].m1 == std::vector<int>{1, 2, 3});
  CHECK(result.trace.steps[1].m1 == std::vector<int>{2, 3});

  CHECK(verify_form(result.form, psi, alg).passed);
}

TEST_CASE("trace sets satisfy the sound step invariants") {
  selftest::Rng rng(7);
  for (int i = 0; i < 60; ++i) {
    PosetPtr domain = selftest::random_poset(rng, 10);
    int q = 2 + rng.next(4);
    Algebra alg = Algebra::builtin("chain-primal:" + std::to_string(q));
    PosetMap psi = selftest::random_map(rng, domain, alg.levels_ptr());
    DecomposeResult result = decompose(psi, alg, Strategy::t1);

    CHECK(verify_form(result.form, psi, alg).passed);
    for (size_t s = 0; s < result.trace.steps.size(); ++s) {
      const TraceStep& step = result.trace.steps[s];
      // M1 is up-closed.
      for (int x : step.m1)
        for (int y : domain->up_set(x))
          CHECK(std::binary_search(step.m1.begin(), step.m1.end(), y));
      // The next M1 avoids the previous minimal antichain entirely.
      if (s + 1 < result.trace.steps.size()) {
        const TraceStep& next = result.trace.steps[s + 1];
        for (int y : next.m1) {
          CHECK(std::binary_search(step.m1.begin(), step.m1.end(), y));
          CHECK(!std::binary_search(step.m1_min.begin(), step.m1_min.end(), y));
        }
        CHECK(next.m1.size() < step.m1.size());
      }
    }
  }
}

TEST_CASE("fold strategy coincides with the set form on builtin algebras") {
  selftest::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    PosetPtr domain = selftest::random_poset(rng, 9);
    int q = 2 + rng.next(4);
    Algebra alg = Algebra::builtin("chain-primal:" + std::to_string(q));
    PosetMap psi = selftest::random_map(rng, domain, alg.levels_ptr());
    auto t1 = decompose(psi, alg, Strategy::t1);
    auto fold = decompose(psi, alg, Strategy::t2_fold);
    CHECK(part_tables(t1.form) == part_tables(fold.form));
  }
}

TEST_CASE("fold strategy equals t1 on fold-form algebras too") {
  Algebra max_fold = Algebra::from_tables(Poset::chain(3), Orientation::primal,
                                          {0, 0, 0, 1, 0, 0, 2, 1, 0},
                                          {0, 1, 2, 1, 1, 2, 2, 2, 2}, {0, 0, 0},
                                          SetForm::fold, "max-fold");
  selftest::Rng rng(9);
  for (int i = 0; i < 25; ++i) {
    PosetPtr domain = selftest::random_poset(rng, 8);
    PosetMap psi = selftest::random_map(rng, domain, max_fold.levels_ptr());
    auto t1 = decompose(psi, max_fold, Strategy::t1);
    auto fold = decompose(psi, max_fold, Strategy::t2_fold);
    CHECK(part_tables(t1.form) == part_tables(fold.form));
    CHECK(verify_form(t1.form, psi, max_fold).passed);
  }
}

TEST_CASE("chain strategy fails on the diamond with a concrete witness") {
  auto diamond = Poset::from_covers({"bot", "b", "a", "top"},
                                    {{"bot", "b"}, {"bot", "a"}, {"b", "top"}, {"a", "top"}});
  Algebra alg = Algebra::builtin("chain-primal:3");
  PosetMap psi(diamond, alg.levels_ptr(), {0, 0, 2, 1});
  try {
    decompose(psi, alg, Strategy::t2_chain);
    FAIL("expected NonMonotonePart");
  } catch (const decompose_error& e) {
    CHECK(e.code() == errc::non_monotone_part);
    CHECK(e.witness() == std::vector<std::string>{"a", "top"});
    CHECK(e.trace().steps.size() == 1);
  }

  // The same map decomposes fine under t1.
  CHECK(verify_form(decompose(psi, alg, Strategy::t1).form, psi, alg).passed);
}

TEST_CASE("chain strategy succeeds where parents line up") {
  auto chain = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  Algebra alg = Algebra::builtin("chain-primal:3");
  PosetMap psi(chain, alg.levels_ptr(), {2, 0, 1});
  DecomposeResult result = decompose(psi, alg, Strategy::t2_chain);
  CHECK(verify_form(result.form, psi, alg).passed);
}

TEST_CASE("boolean functions stay within the arity bound under both algebras") {
  Algebra primal = Algebra::builtin("boolean-primal");
  Algebra dual = Algebra::builtin("boolean-dual");
  for (int n = 1; n <= 3; ++n) {
    auto cube = Poset::boolean_cube(n);
    const uint32_t count = 1u << (1u << n);
    for (uint32_t bits = 0; bits < count; ++bits) {
      std::vector<int> table(static_cast<size_t>(1) << n);
      for (size_t p = 0; p < table.size(); ++p) table[p] = (bits >> p) & 1;
      PosetMap psi(cube, primal.levels_ptr(), table);
      CHECK(decompose(psi, primal, Strategy::t1).form.compose_ops() <= n);
      PosetMap psi_dual(cube, dual.levels_ptr(), table);
      CHECK(decompose(psi_dual, dual, Strategy::t1).form.compose_ops() <= n);
    }
  }
}

TEST_CASE("dual runs state their trace in the working order") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("boolean-dual");
  PosetMap xor_map(cube, alg.levels_ptr(), {0, 1, 1, 0});
  DecomposeResult result = decompose(xor_map, alg, Strategy::t1);
  REQUIRE(!result.trace.steps.empty());
  CHECK(result.trace.orientation == Orientation::dual);
  CHECK(result.trace.steps[0].nonmono ==
        std::vector<std::pair<int, int>>{{3, 1}, {3, 2}});
}

TEST_CASE("random maps verify under the dual chain algebras") {
  selftest::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    PosetPtr domain = selftest::random_poset(rng, 10);
    int q = 2 + rng.next(4);
    Algebra alg = Algebra::builtin("chain-dual:" + std::to_string(q));
    PosetMap psi = selftest::random_map(rng, domain, alg.levels_ptr());
    DecomposeResult result = decompose(psi, alg, Strategy::t1);
    CHECK(verify_form(result.form, psi, alg).passed);
    CHECK(recompose(result.form, alg).same_table(psi));
  }
}

TEST_CASE("sixteen-level chains stay within the pairwise system") {
  Algebra alg = Algebra::builtin("chain-primal:16");
  CHECK(alg.verified(AxiomSystem::B));
  CHECK(!alg.verified(AxiomSystem::A));  // subset enumeration capped at 12 levels
  auto chain = Poset::chain(4);
  PosetMap psi(chain, alg.levels_ptr(), {9, 0, 15, 4});
  CHECK(verify_form(decompose(psi, alg, Strategy::t1).form, psi, alg).passed);
}

TEST_CASE("the engine handles reversed-grid domains") {
  // A primal-view run over dualised posets, the mirror image of a dual run.
  Algebra dual = Algebra::builtin("boolean-dual");
  PosetPtr flipped_levels = dual.levels_ptr()->dualized();
  std::vector<int> swapped(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) swapped[static_cast<size_t>(a) * 2 + b] = dual.boxminus(b, a);
  Algebra view = Algebra::from_tables(
      flipped_levels, Orientation::primal, std::move(swapped),
      {dual.boxplus_table().begin(), dual.boxplus_table().end()},
      {dual.dot_table().begin(), dual.dot_table().end()}, SetForm::order_bound, "view");

  auto flipped_cube = Poset::boolean_cube(2)->dualized();
  for (uint32_t bits = 0; bits < 16; ++bits) {
    std::vector<int> table(4);
    for (int p = 0; p < 4; ++p) table[static_cast<size_t>(p)] = (bits >> p) & 1;
    PosetMap mirrored(flipped_cube, flipped_levels, table);
    DecomposeResult mirror_run = decompose(mirrored, view, Strategy::t1);
    CHECK(verify_form(mirror_run.form, mirrored, view).passed);

    PosetMap direct(Poset::boolean_cube(2), dual.levels_ptr(), table);
    DecomposeResult direct_run = decompose(direct, dual, Strategy::t1);
    REQUIRE(direct_run.form.parts.size() == mirror_run.form.parts.size());
    for (size_t p = 0; p < direct_run.form.parts.size(); ++p)
      CHECK(direct_run.form.parts[p].same_table(mirror_run.form.parts[p]));
  }
}

TEST_CASE("mismatched codomains are rejected") {
  auto cube = Poset::boolean_cube(2);
  Algebra alg = Algebra::builtin("chain-primal:3");
  PosetMap psi(cube, Poset::chain(2), {0, 1, 1, 0});
  CHECK(*caught_errc([&] { decompose(psi, alg, Strategy::t1); }) == errc::shape_mismatch);
}

TEST_CASE("recompose validates its inputs") {
  Algebra alg = Algebra::builtin("boolean-primal");
  ApproximatingForm empty;
  empty.domain = Poset::boolean_cube(1);
  empty.codomain = alg.levels_ptr();
  CHECK(*caught_errc([&] { recompose(empty, alg); }) == errc::shape_mismatch);
}

TEST_SUITE_END();
