#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monoforms/algebra.hpp"
#include "monoforms/order.hpp"

namespace monoforms {

// t1: set form of boxplus over the image of the down cone
// t2_fold: left fold of the binary boxplus over the down cone, canonical order
// t2_chain: boxplus along a spanning forest of the cover digraph
enum class Strategy { t1, t2_fold, t2_chain };

const char* strategy_name(Strategy s);
Strategy parse_strategy(std::string_view text);

// Nested sequence of monotone parts that recomposes to the source map.
// parts holds the peeled approximants in nesting order followed by the final
// residual; the number of compose steps is parts - 1.
struct ApproximatingForm {
  Orientation orientation = Orientation::primal;
  PosetPtr domain;
  PosetPtr codomain;
  std::vector<PosetMap> parts;

  int compose_ops() const { return static_cast<int>(parts.size()) - 1; }
};

// Per-step record of the split sets. Pairs and element lists are canonical
// indices into the domain; for dual runs they are stated in the working
// (reversed) order.
struct TraceStep {
  int step = 0;
  std::vector<std::pair<int, int>> nonmono;  // n(psi_i) driving this step
  std::vector<int> m1;                       // elements whose down cone holds a bad pair
  std::vector<int> m1_min;                   // minimal elements of m1, working order
  std::vector<int> m1_complement;
};

struct DecompositionTrace {
  Orientation orientation = Orientation::primal;
  PosetPtr domain;
  std::vector<TraceStep> steps;
};

// Raised when the construction fails mid-run; carries the partial trace.
class decompose_error : public error {
 public:
  decompose_error(const error& base, DecompositionTrace trace)
      : error(base.code(), base.what(), base.witness()), trace_(std::move(trace)) {}
  const DecompositionTrace& trace() const { return trace_; }

 private:
  DecompositionTrace trace_;
};

struct DecomposeResult {
  ApproximatingForm form;
  DecompositionTrace trace;
};

// Peels monotone approximants off psi until the residual is monotone.
// Monotone input yields a single part and zero compose steps. Dual algebras
// run the same loop against the reversed orders.
DecomposeResult decompose(const PosetMap& psi, const Algebra& alg, Strategy strategy);

// Pointwise fold, innermost part outward.
PosetMap recompose(const ApproximatingForm& form, const Algebra& alg);

struct FormCheck {
  bool passed = false;
  bool recomposes = false;
  bool parts_monotone = false;
  bool bound_ok = false;
  std::optional<std::string> mismatch_element;
  std::optional<int> bad_part;  // index of a non-monotone part
  std::optional<std::pair<std::string, std::string>> bad_part_witness;
  std::vector<std::string> notes;
};

FormCheck verify_form(const ApproximatingForm& form, const PosetMap& psi, const Algebra& alg);

struct FormStats {
  int parts = 0;
  int compose_ops = 0;
  int domain_chain_elements = 0;
  bool bound_ok = false;
};

FormStats form_stats(const ApproximatingForm& form);

}  // namespace monoforms
