#include "monoforms/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "monoforms/decompose.hpp"
#include "monoforms/inf.hpp"
#include "monoforms/io.hpp"
#include "monoforms/theta.hpp"

namespace monoforms::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

TruthTable tt_from_bits(int arity, uint32_t bits) {
  std::string values(static_cast<size_t>(1) << arity, '0');
  for (size_t p = 0; p < values.size(); ++p)
    if (bits & (1u << p)) values[p] = '1';
  return TruthTable{arity, std::move(values)};
}

PosetMap map_of_tt(const TruthTable& tt, const PosetPtr& cube, const PosetPtr& levels) {
  std::vector<int> table(static_cast<size_t>(1) << tt.arity);
  for (size_t p = 0; p < table.size(); ++p) table[p] = tt.at(static_cast<int>(p));
  return PosetMap(cube, levels, std::move(table));
}

// Criterion 1: the boolean instances satisfy their advertised systems,
// subsets of L included.
std::pair<bool, std::string> lemma_axioms() {
  struct Case {
    const char* algebra;
    AxiomSystem system;
  };
  const Case cases[] = {
      {"boolean-dual", AxiomSystem::A_star},
      {"boolean-dual", AxiomSystem::B_plus_star},
      {"boolean-primal", AxiomSystem::A},
      {"boolean-primal", AxiomSystem::B},
  };
  std::string detail;
  for (const Case& c : cases) {
    Algebra alg = Algebra::builtin(c.algebra);
    AxiomReport report = check_axioms(alg, c.system);
    if (!report.all_passed())
      return {false, std::string(c.algebra) + " failed " + axiom_system_name(c.system)};
    if (!detail.empty()) detail += ", ";
    detail += std::string(c.algebra) + ":" + axiom_system_name(c.system);
  }
  return {true, detail + " all exhaustive"};
}

// Criterion 2: every boolean function up to the arity cap synthesises into
// monotone parts, at most n arrows, and recomposes exactly.
std::pair<bool, std::string> inf_exhaustive(int max_n) {
  const int hi = std::min(4, max_n);
  long long functions = 0;
  for (int n = 1; n <= hi; ++n) {
    const uint64_t count = 1ull << (1ull << n);
    for (uint64_t bits = 0; bits < count; ++bits) {
      TruthTable tt = tt_from_bits(n, static_cast<uint32_t>(bits));
      ImplicativeForm inf = synth_inf(tt);
      if (inf.arrows() > n)
        return {false, "arrows > n for table " + tt.values};
      for (const TruthTable& part : inf.parts)
        if (!part.monotone()) return {false, "non-monotone part for table " + tt.values};
      for (int p = 0; p < (1 << n); ++p) {
        int acc = inf.parts.front().at(p);
        for (size_t i = 1; i < inf.parts.size(); ++i) acc = acc == 1 ? inf.parts[i].at(p) : 1;
        if (acc != tt.at(p)) return {false, "recomposition failed for table " + tt.values};
      }
      ++functions;
    }
  }
  return {true, std::to_string(functions) + " functions, arity 1.." + std::to_string(hi)};
}

// Criterion 3: the XOR witness, checked point by point.
std::pair<bool, std::string> xor_witness() {
  TruthTable tt = TruthTable::parse("0110");
  ImplicativeForm inf = synth_inf(tt);
  if (inf.arrows() != 2) return {false, "expected exactly 2 arrows"};
  Formula produced = inf_formula(tt);
  Formula expected = parse_formula("(imp (imp (or x1 x2) (and x1 x2)) lit:0)");
  FormulaEnv env;
  env.q = 2;
  env.arity = 2;
  for (int p = 0; p < 4; ++p) {
    std::vector<int> a = {(p >> 1) & 1, p & 1};
    int want = evaluate_formula(expected, env, a);
    if (want != tt.at(p)) return {false, "expected formula is not XOR"};
    if (evaluate_formula(produced, env, a) != want)
      return {false, "produced formula differs at point " + std::to_string(p)};
  }
  return {true, print_formula(produced)};
}

bool trace_nonmono_strictly_shrinks(const DecompositionTrace& trace, std::string& why) {
  for (size_t i = 1; i < trace.steps.size(); ++i) {
    const auto& prev = trace.steps[i - 1].nonmono;
    const auto& cur = trace.steps[i].nonmono;
    bool subset = std::includes(prev.begin(), prev.end(), cur.begin(), cur.end());
    if (!subset || cur.size() == prev.size()) {
      why = "n(psi_" + std::to_string(i) + ") is not a strict subset of n(psi_" +
            std::to_string(i - 1) + ")";
      return false;
    }
  }
  return true;
}

// Criterion 4: seeded random posets and maps under chain-primal, strategy t1.
std::pair<bool, std::string> random_t1_suite(uint64_t seed) {
  Rng rng(seed);
  int shrink_failures = 0;
  std::string first_shrink_failure;
  for (int i = 0; i < 200; ++i) {
    PosetPtr domain = random_poset(rng, 10);
    int q = 2 + rng.next(4);
    Algebra alg = Algebra::builtin("chain-primal:" + std::to_string(q));
    PosetMap psi = random_map(rng, domain, alg.levels_ptr());
    DecomposeResult result = decompose(psi, alg, Strategy::t1);
    FormCheck check = verify_form(result.form, psi, alg);
    if (!check.passed)
      return {false, "instance " + std::to_string(i) + ": " +
                         (check.notes.empty() ? "verify_form failed" : check.notes.front())};
    std::string why;
    if (!trace_nonmono_strictly_shrinks(result.trace, why)) {
      ++shrink_failures;
      if (first_shrink_failure.empty())
        first_shrink_failure = "instance " + std::to_string(i) + ": " + why;
    }
  }
  if (shrink_failures > 0)
    return {false, std::to_string(shrink_failures) +
                       "/200 instances broke the strict n-shrink claim; first: " +
                       first_shrink_failure};
  return {true, "200 instances verified, n strictly shrank every step"};
}

// Criterion 5: the dual path run by hand equals the engine's dual run.
std::pair<bool, std::string> duality_sweep() {
  Algebra direct = Algebra::builtin("boolean-dual");
  // Primal view over the reversed orders: boxminus arguments swap.
  PosetPtr dual_levels = direct.levels_ptr()->dualized();
  std::vector<int> swapped(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) swapped[static_cast<size_t>(a) * 2 + b] = direct.boxminus(b, a);
  Algebra view = Algebra::from_tables(
      dual_levels, Orientation::primal, std::move(swapped),
      {direct.boxplus_table().begin(), direct.boxplus_table().end()},
      {direct.dot_table().begin(), direct.dot_table().end()}, SetForm::order_bound, "view");

  long long functions = 0;
  for (int n = 1; n <= 3; ++n) {
    auto cube = Poset::boolean_cube(n);
    auto dual_cube = cube->dualized();
    const uint64_t count = 1ull << (1ull << n);
    for (uint64_t bits = 0; bits < count; ++bits) {
      TruthTable tt = tt_from_bits(n, static_cast<uint32_t>(bits));
      PosetMap psi = map_of_tt(tt, cube, direct.levels_ptr());
      DecomposeResult direct_run = decompose(psi, direct, Strategy::t1);

      std::vector<int> table(psi.table().begin(), psi.table().end());
      PosetMap mirrored(dual_cube, dual_levels, std::move(table));
      DecomposeResult manual_run = decompose(mirrored, view, Strategy::t1);

      if (direct_run.form.parts.size() != manual_run.form.parts.size())
        return {false, "part count differs for table " + tt.values};
      for (size_t p = 0; p < direct_run.form.parts.size(); ++p)
        if (!direct_run.form.parts[p].same_table(manual_run.form.parts[p]))
          return {false, "part " + std::to_string(p) + " differs for table " + tt.values};
      ++functions;
    }
  }
  return {true, std::to_string(functions) + " functions, tables identical"};
}

// Criterion 6: t2-fold coincides with t1 on the random suite under both
// builtin orientations; t2-chain hits the documented diamond counterexample.
std::pair<bool, std::string> strategy_checks(uint64_t seed) {
  for (const char* base : {"chain-primal:", "chain-dual:"}) {
    Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
      PosetPtr domain = random_poset(rng, 10);
      int q = 2 + rng.next(4);
      Algebra alg = Algebra::builtin(base + std::to_string(q));
      PosetMap psi = random_map(rng, domain, alg.levels_ptr());
      DecomposeResult t1 = decompose(psi, alg, Strategy::t1);
      DecomposeResult fold = decompose(psi, alg, Strategy::t2_fold);
      if (t1.form.parts.size() != fold.form.parts.size())
        return {false, "t2-fold part count differs on instance " + std::to_string(i)};
      for (size_t p = 0; p < t1.form.parts.size(); ++p)
        if (!t1.form.parts[p].same_table(fold.form.parts[p]))
          return {false, "t2-fold part differs on instance " + std::to_string(i)};
    }
  }

  // Diamond with the canonical parent of top being b: chain choice breaks
  // monotonicity with witness (a, top).
  auto diamond = Poset::from_covers({"bot", "b", "a", "top"},
                                    {{"bot", "b"}, {"bot", "a"}, {"b", "top"}, {"a", "top"}});
  Algebra alg = Algebra::builtin("chain-primal:3");
  std::vector<int> table = {0, 0, 2, 1};  // bot, b, a, top
  PosetMap psi(diamond, alg.levels_ptr(), std::move(table));
  try {
    decompose(psi, alg, Strategy::t2_chain);
    return {false, "diamond counterexample did not raise NonMonotonePart"};
  } catch (const decompose_error& e) {
    if (e.code() != errc::non_monotone_part)
      return {false, std::string("diamond raised ") + errc_name(e.code())};
    if (e.witness() != std::vector<std::string>{"a", "top"})
      return {false, "diamond witness is not (a, top)"};
  }
  return {true,
          "t2-fold == t1 on 200 instances per orientation; diamond raises "
          "NonMonotonePart(a, top)"};
}

bool formula_is_theta_shaped(const Formula& f, std::string& why) {
  // Leaves are and/var/lit monomials; everything above them is bminus/bplus.
  std::function<bool(int)> leaf_ground = [&](int idx) -> bool {
    const FormulaNode& n = f.node(idx);
    switch (n.op) {
      case FormulaOp::var:
      case FormulaOp::lit:
        return true;
      case FormulaOp::band:
        return leaf_ground(n.a) && leaf_ground(n.b);
      default:
        return false;
    }
  };
  std::function<bool(int)> internal_ok = [&](int idx) -> bool {
    if (leaf_ground(idx)) return true;
    const FormulaNode& n = f.node(idx);
    if (n.op != FormulaOp::bminus && n.op != FormulaOp::bplus) {
      why = "unexpected operator above the leaves";
      return false;
    }
    return internal_ok(n.a) && internal_ok(n.b);
  };
  return internal_ok(f.root());
}

// Criterion 7: every n = 3 boolean function decomposes into a theta formula
// with bminus/bplus internal nodes and monomial leaves.
std::pair<bool, std::string> theta_sweep() {
  auto algebra = std::make_shared<const Algebra>(Algebra::builtin("boolean-primal"));
  auto cube = Poset::boolean_cube(3);
  KClass K = KClass::for_domain(cube, algebra);
  for (uint32_t bits = 0; bits < 256; ++bits) {
    TruthTable tt = tt_from_bits(3, bits);
    PosetMap psi = map_of_tt(tt, cube, algebra->levels_ptr());
    ThetaFormResult result = theta_form(psi, *algebra, K);
    if (!result.report.verified) return {false, "unverified result for table " + tt.values};
    std::string why;
    if (!formula_is_theta_shaped(result.formula, why))
      return {false, "table " + tt.values + ": " + why};
    for (int p = 0; p < 8; ++p) {
      std::vector<int> a = {(p >> 2) & 1, (p >> 1) & 1, p & 1};
      if (evaluate_formula(result.formula, result.env, a) != tt.at(p))
        return {false, "table " + tt.values + " differs at point " + std::to_string(p)};
    }
  }
  return {true, "256 functions, all formulas theta-shaped and exact"};
}

// Independent classical reading used for the q = 2 agreement check: and/or
// as connectives, G1 as the identity, neg as negation.
int classical_eval(const Formula& f, int idx, const std::vector<int>& a) {
  const FormulaNode& n = f.node(idx);
  switch (n.op) {
    case FormulaOp::var:
      return a[static_cast<size_t>(n.value - 1)];
    case FormulaOp::lit:
      return n.value;
    case FormulaOp::band:
      return classical_eval(f, n.a, a) & classical_eval(f, n.b, a);
    case FormulaOp::bor:
      return classical_eval(f, n.a, a) | classical_eval(f, n.b, a);
    case FormulaOp::imp:
      return (1 - classical_eval(f, n.a, a)) | classical_eval(f, n.b, a);
    case FormulaOp::unary: {
      int v = classical_eval(f, n.a, a);
      if (n.name == "G1") return v;
      if (n.name == "neg") return 1 - v;
      return -1;
    }
    default:
      return -1;
  }
}

// Criterion 8: many-valued synthesis, exhaustively for arity 1 over three
// levels, on seeded random tables for arity 2, and classically at q = 2.
std::pair<bool, std::string> mv_sweep(uint64_t seed) {
  for (int a = 0; a < 27; ++a) {
    MvTable t{3, 1, {a / 9, (a / 3) % 3, a % 3}};
    synthesize_mv(t);  // throws unless the exhaustive check passes
  }
  Rng rng(seed);
  for (int i = 0; i < 500; ++i) {
    MvTable t{3, 2, {}};
    t.values.resize(9);
    for (int& v : t.values) v = rng.next(3);
    synthesize_mv(t);
  }
  for (uint32_t bits = 0; bits < 16; ++bits) {
    TruthTable tt = tt_from_bits(2, bits);
    MvTable t{2, 2, {tt.at(0), tt.at(1), tt.at(2), tt.at(3)}};
    MvResult result = synthesize_mv(t);
    for (int p = 0; p < 4; ++p) {
      std::vector<int> a = {(p >> 1) & 1, p & 1};
      if (classical_eval(result.formula, result.formula.root(), a) != tt.at(p))
        return {false, "classical reading differs for table " + tt.values};
    }
  }
  return {true, "27 exhaustive + 500 random q=3 tables; q=2 agrees classically"};
}

// Criterion 9: random posets embed into the cube with the order-embedding
// property checked over all pairs.
std::pair<bool, std::string> embedding_suite(uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    PosetPtr p = random_poset(rng, 8);
    PosetMap f = embed_into_cube(p);
    for (int x = 0; x < p->size(); ++x)
      for (int y = 0; y < p->size(); ++y)
        if (p->leq(x, y) != f.codomain().leq(f.at(x), f.at(y)))
          return {false, "embedding failed on instance " + std::to_string(i)};
  }
  return {true, "100 posets embedded, all pairs checked"};
}

// Criterion 10: chain algebras pass their systems and degenerate to the
// boolean instances at q = 2.
std::pair<bool, std::string> chain_algebras() {
  for (int q = 3; q <= 5; ++q) {
    Algebra primal = Algebra::builtin("chain-primal:" + std::to_string(q));
    Algebra dual = Algebra::builtin("chain-dual:" + std::to_string(q));
    for (AxiomSystem s : {AxiomSystem::A, AxiomSystem::B})
      if (!check_axioms(primal, s).all_passed())
        return {false, "chain-primal:" + std::to_string(q) + " failed " + axiom_system_name(s)};
    for (AxiomSystem s : {AxiomSystem::A_star, AxiomSystem::B_star})
      if (!check_axioms(dual, s).all_passed())
        return {false, "chain-dual:" + std::to_string(q) + " failed " + axiom_system_name(s)};
  }
  auto tables_equal = [](const Algebra& a, const Algebra& b) {
    return std::equal(a.boxminus_table().begin(), a.boxminus_table().end(),
                      b.boxminus_table().begin(), b.boxminus_table().end()) &&
           std::equal(a.boxplus_table().begin(), a.boxplus_table().end(),
                      b.boxplus_table().begin(), b.boxplus_table().end()) &&
           std::equal(a.dot_table().begin(), a.dot_table().end(), b.dot_table().begin(),
                      b.dot_table().end());
  };
  if (!tables_equal(Algebra::builtin("chain-primal:2"), Algebra::builtin("boolean-primal")))
    return {false, "chain-primal:2 differs from boolean-primal"};
  if (!tables_equal(Algebra::builtin("chain-dual:2"), Algebra::builtin("boolean-dual")))
    return {false, "chain-dual:2 differs from boolean-dual"};
  return {true, "q in {3,4,5} pass; q=2 coincides with the boolean instances"};
}

}  // namespace

PosetPtr random_poset(Rng& rng, int max_size) {
  const int size = 1 + rng.next(max_size);
  std::vector<std::string> elements;
  elements.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) elements.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int j = 1; j < size; ++j)
    for (int i = 0; i < j; ++i)
      if (rng.next(100) < 30) covers.emplace_back(elements[static_cast<size_t>(i)],
                                                  elements[static_cast<size_t>(j)]);
  return Poset::from_covers(std::move(elements), covers);
}

PosetMap random_map(Rng& rng, PosetPtr domain, PosetPtr codomain) {
  std::vector<int> table(static_cast<size_t>(domain->size()));
  for (int& v : table) v = rng.next(codomain->size());
  return PosetMap(std::move(domain), std::move(codomain), std::move(table));
}

std::vector<CriterionResult> run_acceptance(int max_n, uint64_t seed) {
  std::vector<Criterion> criteria = {
      {1, "lemma-boolean-axioms", lemma_axioms},
      {2, "inf-exhaustive", [max_n] { return inf_exhaustive(max_n); }},
      {3, "xor-witness", xor_witness},
      {4, "t1-random-posets", [seed] { return random_t1_suite(seed); }},
      {5, "duality-table-equality", duality_sweep},
      {6, "t2-strategies", [seed] { return strategy_checks(seed); }},
      {7, "theta-form-boolean-n3", theta_sweep},
      {8, "mv-synthesis", [seed] { return mv_sweep(seed); }},
      {9, "cube-embedding", [seed] { return embedding_suite(seed); }},
      {10, "chain-algebras", chain_algebras},
  };

  std::vector<CriterionResult> results;
  results.reserve(criteria.size());
  for (const Criterion& c : criteria) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    auto start = Clock::now();
    try {
      auto [passed, detail] = c.run();
      r.passed = passed;
      r.detail = detail;
    } catch (const error& e) {
      r.passed = false;
      r.detail = std::string(errc_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace monoforms::selftest
