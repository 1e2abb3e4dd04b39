#include <doctest.h>

#include "monoforms/decompose.hpp"
#include "monoforms/io.hpp"
#include "monoforms/selftest.hpp"
#include "monoforms/theta.hpp"
#include "test_util.hpp"

using namespace monoforms;
using testutil::caught_errc;

TEST_SUITE_BEGIN("io");

TEST_CASE("poset files round-trip") {
  auto p = io::poset_from_json(R"({"elements":["a","b","c"],"covers":[["a","b"],["b","c"]]})");
  CHECK(p->size() == 3);
  CHECK(p->leq(p->index_of("a"), p->index_of("c")));
  std::string text = io::poset_to_json(*p);
  auto again = io::poset_from_json(text);
  CHECK(again->same_order_as(*p));
}

TEST_CASE("poset shorthand strings") {
  CHECK(io::poset_from_json(R"("cube:3")")->size() == 8);
  CHECK(io::poset_from_json(R"("chain:5")")->size() == 5);
  CHECK(io::poset_from_json(R"("grid:3:2")")->size() == 9);
  CHECK(*caught_errc([] { io::poset_from_json(R"("wedge:3")"); }) == errc::parse_error);
}

TEST_CASE("malformed json is reported") {
  CHECK(*caught_errc([] { io::poset_from_json("{"); }) == errc::parse_error);
  CHECK(*caught_errc([] { io::poset_from_json(R"({"elements":["a"]})"); }) ==
        errc::parse_error);
  // Wrong-typed fields come back as parse errors, not foreign exceptions.
  CHECK(*caught_errc([] {
          io::poset_from_json(R"({"elements":["a","b"],"covers":[[1,2]]})");
        }) == errc::parse_error);
  CHECK(*caught_errc([] {
          io::map_from_json(R"({"domain":"cube:1","codomain":"chain:2","values":{"0":0,"1":1}})");
        }) == errc::parse_error);
  CHECK(*caught_errc([] { io::mv_from_json(R"({"q":3,"n":1,"values":["x"]})"); }) ==
        errc::parse_error);
}

TEST_CASE("map files round-trip") {
  std::string text = R"({
    "domain": "cube:2",
    "codomain": "chain:2",
    "values": {"00":"0", "01":"1", "10":"1", "11":"0"}
  })";
  PosetMap f = io::map_from_json(text);
  CHECK(f.at(0) == 0);
  CHECK(f.at(3) == 0);
  PosetMap again = io::map_from_json(io::map_to_json(f));
  CHECK(again.same_table(f));
}

TEST_CASE("map files validate their values") {
  CHECK(*caught_errc([] {
          io::map_from_json(
              R"({"domain":"cube:1","codomain":"chain:2","values":{"0":"0"}})");
        }) == errc::parse_error);
  CHECK(*caught_errc([] {
          io::map_from_json(
              R"({"domain":"cube:1","codomain":"chain:2","values":{"0":"0","1":"7"}})");
        }) == errc::unknown_element);
}

TEST_CASE("algebra files round-trip and builtins serialise by name") {
  auto alg = io::algebra_from_json(R"({
    "levels": 2,
    "orientation": "primal",
    "boxminus": [[0,0],[1,0]],
    "boxplus": [[0,1],[1,1]],
    "dot": [0,0]
  })");
  CHECK(alg->boxminus(1, 0) == 1);
  CHECK(alg->set_form() == SetForm::fold);
  CHECK(alg->aci_ok());
  auto again = io::algebra_from_json(io::algebra_to_json(*alg));
  CHECK(std::equal(again->boxminus_table().begin(), again->boxminus_table().end(),
                   alg->boxminus_table().begin()));

  Algebra builtin = Algebra::builtin("boolean-dual");
  CHECK(io::algebra_to_json(builtin) == "\"boolean-dual\"\n");
}

TEST_CASE("resolve_algebra accepts names") {
  CHECK(io::resolve_algebra("chain-dual:4")->level_count() == 4);
  CHECK(*caught_errc([] { io::resolve_algebra("chain-dual:99"); }) ==
        errc::chain_size_out_of_range);
}

TEST_CASE("form files round-trip through verification") {
  Algebra alg = Algebra::builtin("boolean-dual");
  auto cube = Poset::boolean_cube(2);
  PosetMap psi(cube, alg.levels_ptr(), {0, 1, 1, 0});
  DecomposeResult result = decompose(psi, alg, Strategy::t1);

  std::string text = io::form_to_json(result.form, alg);
  io::FormFile file = io::form_from_json(text);
  CHECK(file.form.parts.size() == result.form.parts.size());
  CHECK(file.form.orientation == Orientation::dual);
  CHECK(verify_form(file.form, psi, *file.algebra).passed);

  CHECK(io::form_to_json(file.form, *file.algebra) == text);
}

TEST_CASE("trace serialisation lists the step sets") {
  Algebra alg = Algebra::builtin("boolean-primal");
  auto line = Poset::boolean_cube(1);
  PosetMap neg(line, alg.levels_ptr(), {1, 0});
  DecomposeResult result = decompose(neg, alg, Strategy::t1);
  std::string text = io::trace_to_json(result.trace);
  CHECK(text.find("\"orientation\": \"primal\"") != std::string::npos);
  CHECK(text.find("\"m1\"") != std::string::npos);
  CHECK(io::trace_to_json(result.trace) == text);
}

TEST_CASE("truth table files accept all three spellings") {
  CHECK(io::tt_from_text("n=2\n0110\n").values == "0110");
  CHECK(io::tt_from_text("0110").values == "0110");
  CHECK(io::tt_from_text(R"({"n":2,"values":"0110"})").values == "0110");
  CHECK(*caught_errc([] { io::tt_from_text("n=3\n0110\n"); }) == errc::bad_length);
  CHECK(io::tt_to_text(TruthTable::parse("0110")) == "n=2\n0110\n");
}

TEST_CASE("mv tables round-trip") {
  MvTable t = io::mv_from_json(R"({"q":3,"n":1,"values":[0,2,1]})");
  CHECK(t.q == 3);
  CHECK(t.values == std::vector<int>{0, 2, 1});
  CHECK(io::mv_from_json(io::mv_to_json(t)).values == t.values);
}

TEST_CASE("formula files round-trip with their unary tables") {
  MvResult result = synthesize_mv(MvTable{3, 1, {1, 0, 2}});
  std::string text = io::formula_to_text(result.formula, result.env);
  io::FormulaFile file = io::formula_from_text(text);
  CHECK(file.env.q == 3);
  CHECK(file.env.arity == 1);
  CHECK(print_formula(file.formula) == print_formula(result.formula));
  for (int v = 0; v < 3; ++v) {
    std::vector<int> a = {v};
    CHECK(evaluate_formula(file.formula, file.env, a) ==
          evaluate_formula(result.formula, result.env, a));
  }
  CHECK(io::formula_to_text(file.formula, file.env) == text);
}

TEST_CASE("formula files demand a header") {
  CHECK(*caught_errc([] { io::formula_from_text("(and x1 x2)\n"); }) == errc::parse_error);
  CHECK(*caught_errc([] { io::formula_from_text("q=2 n=2\n"); }) == errc::parse_error);
}

TEST_CASE("parsers reject mutated and random input without crashing") {
  selftest::Rng rng(51);
  const std::string seeds[] = {
      R"({"elements":["a","b"],"covers":[["a","b"]]})",
      R"({"domain":"cube:2","codomain":"chain:2","values":{"00":"0","01":"1","10":"1","11":"0"}})",
      "n=2\n0110\n",
      "q=2 n=2\nunary neg 1 0\n(imp (u:neg x1) lit:0)\n",
      "(bminus (bplus x1 x2) (and x1 x2))",
      R"({"levels":2,"orientation":"dual","boxminus":[[1,1],[0,1]],"boxplus":[[0,0],[0,1]],"dot":[1,1]})",
      R"({"orientation":"dual","domain":"cube:1","codomain":"chain:2","algebra":"boolean-dual","parts":[{"0":"1","1":"0"}]})",
  };
  auto mutate = [&](std::string text) {
    int edits = 1 + rng.next(4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      size_t pos = static_cast<size_t>(rng.next(static_cast<int>(text.size())));
      switch (rng.next(3)) {
        case 0: text[pos] = static_cast<char>(32 + rng.next(95)); break;
        case 1: text.erase(pos, 1); break;
        default: text.insert(pos, 1, static_cast<char>(32 + rng.next(95))); break;
      }
    }
    return text;
  };
  int survived = 0;
  for (int round = 0; round < 1000; ++round) {
    std::string text = mutate(seeds[static_cast<size_t>(rng.next(7))]);
    for (int which = 0; which < 7; ++which) {
      try {
        switch (which) {
          case 0: io::poset_from_json(text); break;
          case 1: io::map_from_json(text); break;
          case 2: (void)io::tt_from_text(text); break;
          case 3: (void)io::formula_from_text(text); break;
          case 4: (void)io::algebra_from_json(text); break;
          case 5: (void)io::form_from_json(text); break;
          default: (void)parse_formula(text); break;
        }
        ++survived;  // parsing garbage successfully is fine, crashing is not
      } catch (const error&) {
      }
    }
  }
  CHECK(survived >= 0);
}

TEST_CASE("axiom reports serialise with their verdicts") {
  Algebra alg = Algebra::builtin("boolean-dual");
  std::string text = io::axiom_report_to_json(check_axioms(alg, AxiomSystem::A_star),
                                              alg.name());
  CHECK(text.find("\"system\": \"A*\"") != std::string::npos);
  CHECK(text.find("\"all_passed\": true") != std::string::npos);
}

TEST_SUITE_END();
