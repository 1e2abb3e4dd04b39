// Command-line surface: decompose maps, synthesise implicative normal forms
// and many-valued formulas, check axiom systems, embed posets, verify forms,
// and run the acceptance suites.
//
// Exit codes: 0 ok, 1 verification or axiom failure, 2 input error,
// 3 internal construction failure (with a trace dump on stderr).

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "monoforms/decompose.hpp"
#include "monoforms/inf.hpp"
#include "monoforms/io.hpp"
#include "monoforms/selftest.hpp"
#include "monoforms/theta.hpp"

namespace {

using namespace monoforms;

int exit_code_for(errc code) {
  switch (code) {
    case errc::no_residual:
    case errc::algebra_defect:
    case errc::non_monotone_part:
    case errc::no_progress:
    case errc::iteration_overflow:
    case errc::not_representable:
      return 3;
    default:
      return 2;
  }
}

struct Options {
  std::string map_path;
  std::string tt_path;
  std::string table_path;
  std::string poset_path;
  std::string form_path;
  std::string against_path;
  std::string algebra = "boolean-primal";
  std::string strategy = "t1";
  std::string system = "B";
  std::string emit = "formula";
  std::string trace_path;
  bool trace = false;
  int max_n = 4;
  uint64_t seed = 0;
};

int run_decompose(const Options& opt) {
  PosetMap psi = io::map_from_json(io::read_file(opt.map_path));
  auto alg = io::resolve_algebra(opt.algebra);
  DecomposeResult result = decompose(psi, *alg, parse_strategy(opt.strategy));
  std::cout << io::form_to_json(result.form, *alg);
  if (opt.trace || !opt.trace_path.empty()) {
    std::string trace = io::trace_to_json(result.trace);
    if (!opt.trace_path.empty())
      io::write_file(opt.trace_path, trace);
    else
      std::cerr << trace;
  }
  return 0;
}

int run_inf(const Options& opt) {
  TruthTable tt = io::tt_from_text(io::read_file(opt.tt_path));
  if (opt.emit == "formula") {
    Formula f = inf_formula(tt);
    std::cout << print_formula(f) << "\n";
    return 0;
  }
  if (opt.emit == "parts") {
    ImplicativeForm inf = synth_inf(tt);
    std::string parts = "{\"parts\": [";
    for (size_t i = 0; i < inf.parts.size(); ++i)
      parts += (i ? ", \"" : "\"") + inf.parts[i].values + "\"";
    parts += "], \"arrows\": " + std::to_string(inf.arrows()) + "}";
    std::cout << parts << "\n";
    return 0;
  }
  throw error(errc::unknown_name, "--emit must be 'formula' or 'parts'");
}

int run_mv(const Options& opt) {
  MvTable table = io::mv_from_json(io::read_file(opt.table_path));
  MvResult result = synthesize_mv(table);
  std::cout << io::formula_to_text(result.formula, result.env);
  return 0;
}

int run_theta(const Options& opt) {
  PosetMap psi = io::map_from_json(io::read_file(opt.map_path));
  auto alg = io::resolve_algebra(opt.algebra);
  KClass K = KClass::for_domain(psi.domain_ptr(), alg);
  ThetaFormResult result = theta_form(psi, *alg, K);
  std::cout << io::formula_to_text(result.formula, result.env);
  return 0;
}

int run_check_axioms(const Options& opt) {
  auto alg = io::resolve_algebra(opt.algebra);
  AxiomReport report = check_axioms(*alg, parse_axiom_system(opt.system));
  std::cout << io::axiom_report_to_json(report, alg->name());
  return report.all_passed() ? 0 : 1;
}

int run_embed(const Options& opt) {
  PosetPtr p = io::poset_from_json(io::read_file(opt.poset_path));
  PosetMap f = embed_into_cube(p);
  std::cout << io::map_to_json(f);
  return 0;
}

int run_verify(const Options& opt) {
  io::FormFile file = io::form_from_json(io::read_file(opt.form_path));
  PosetMap psi = io::map_from_json(io::read_file(opt.against_path));
  FormCheck check = verify_form(file.form, psi, *file.algebra);
  std::cout << io::form_check_to_json(check);
  return check.passed ? 0 : 1;
}

int run_selftest(const Options& opt) {
  auto results = selftest::run_acceptance(opt.max_n, opt.seed);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%2d] %s  %-24s %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    std::fprintf(stderr, "[%2d] %.3fs\n", r.id, r.seconds);
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "RESULT: all criteria passed" : "RESULT: criteria FAILED");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monoforms: monotone approximating forms over finite posets"};
  app.require_subcommand(1);
  Options opt;

  auto* cmd_decompose = app.add_subcommand("decompose", "decompose a map into monotone parts");
  cmd_decompose->add_option("--map", opt.map_path, "map JSON file")->required();
  cmd_decompose->add_option("--algebra", opt.algebra, "builtin name or algebra JSON file");
  cmd_decompose->add_option("--strategy", opt.strategy, "t1 | t2-fold | t2-chain");
  cmd_decompose->add_flag("--trace", opt.trace, "emit the step trace on stderr");
  cmd_decompose->add_option("--trace-file", opt.trace_path, "write the step trace to a file");

  auto* cmd_inf = app.add_subcommand("inf", "implicative normal form of a boolean function");
  cmd_inf->add_option("--tt", opt.tt_path, "truth table file")->required();
  cmd_inf->add_option("--emit", opt.emit, "formula | parts");

  auto* cmd_mv = app.add_subcommand("mv", "synthesise a many-valued function");
  cmd_mv->add_option("--table", opt.table_path, "mv table JSON file")->required();

  auto* cmd_theta = app.add_subcommand("theta", "theta-form formula decomposition");
  cmd_theta->add_option("--map", opt.map_path, "map JSON file")->required();
  cmd_theta->add_option("--algebra", opt.algebra, "builtin name or algebra JSON file");

  auto* cmd_axioms = app.add_subcommand("check-axioms", "exhaustively check an axiom system");
  cmd_axioms->add_option("--algebra", opt.algebra, "builtin name or algebra JSON file")
      ->required();
  cmd_axioms->add_option("--system", opt.system, "A | A* | B | B* | B+ | B+*")->required();

  auto* cmd_embed = app.add_subcommand("embed", "embed a poset into the boolean cube");
  cmd_embed->add_option("--poset", opt.poset_path, "poset JSON file")->required();

  auto* cmd_verify = app.add_subcommand("verify", "re-verify a form against a map");
  cmd_verify->add_option("--form", opt.form_path, "form JSON file")->required();
  cmd_verify->add_option("--against", opt.against_path, "map JSON file")->required();

  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suites");
  cmd_selftest->add_option("--max-n", opt.max_n, "cap for the exhaustive boolean sweep");
  cmd_selftest->add_option("--seed", opt.seed, "seed for the random suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_decompose)) return run_decompose(opt);
    if (app.got_subcommand(cmd_inf)) return run_inf(opt);
    if (app.got_subcommand(cmd_mv)) return run_mv(opt);
    if (app.got_subcommand(cmd_theta)) return run_theta(opt);
    if (app.got_subcommand(cmd_axioms)) return run_check_axioms(opt);
    if (app.got_subcommand(cmd_embed)) return run_embed(opt);
    if (app.got_subcommand(cmd_verify)) return run_verify(opt);
    if (app.got_subcommand(cmd_selftest)) return run_selftest(opt);
  } catch (const decompose_error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    std::cerr << io::trace_to_json(e.trace());
    return exit_code_for(e.code());
  } catch (const error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
