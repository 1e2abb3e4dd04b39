#pragma once

#include <memory>
#include <string>

#include "monoforms/algebra.hpp"
#include "monoforms/decompose.hpp"
#include "monoforms/formula.hpp"
#include "monoforms/inf.hpp"
#include "monoforms/order.hpp"
#include "monoforms/theta.hpp"

// File formats. Posets inside maps and forms may be inline objects or the
// shorthand strings "cube:n", "chain:q", "grid:q:n". All emitters are
// deterministic: keys follow the canonical element enumeration.
namespace monoforms::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

PosetPtr poset_from_json(const std::string& text);
std::string poset_to_json(const Poset& p);

PosetMap map_from_json(const std::string& text);
std::string map_to_json(const PosetMap& f);

std::shared_ptr<const Algebra> algebra_from_json(const std::string& text);
std::string algebra_to_json(const Algebra& alg);

// Builtin name ("boolean-dual", "chain-primal:5") or a path to an algebra
// JSON file.
std::shared_ptr<const Algebra> resolve_algebra(const std::string& selector);

struct FormFile {
  ApproximatingForm form;
  std::shared_ptr<const Algebra> algebra;
};
FormFile form_from_json(const std::string& text);
std::string form_to_json(const ApproximatingForm& form, const Algebra& alg);

std::string trace_to_json(const DecompositionTrace& trace);

// Truth table files: either "n=<arity>" then the value string, a bare value
// string, or {"n":..., "values":"..."}.
TruthTable tt_from_text(const std::string& text);
std::string tt_to_text(const TruthTable& tt);

MvTable mv_from_json(const std::string& text);
std::string mv_to_json(const MvTable& table);

// Formula files: a "q=<q> n=<arity>" header, one "unary <name> <values...>"
// line per referenced unary table, then the s-expression.
struct FormulaFile {
  Formula formula;
  FormulaEnv env;
};
FormulaFile formula_from_text(const std::string& text);
std::string formula_to_text(const Formula& f, const FormulaEnv& env);

std::string axiom_report_to_json(const AxiomReport& report, const std::string& algebra_name);
std::string form_check_to_json(const FormCheck& check);

}  // namespace monoforms::io
