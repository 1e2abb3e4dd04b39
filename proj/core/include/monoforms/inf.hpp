#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoforms/formula.hpp"

namespace monoforms {

// Boolean function of arity n as a 2^n value string; index i packs the
// assignment with x1 as the most significant bit.
struct TruthTable {
  int arity = 0;
  std::string values;

  static TruthTable parse(std::string_view text);
  int at(int index) const { return values[static_cast<size_t>(index)] - '0'; }
  bool monotone() const;
};

// Implicative normal form ((P_k -> P_{k-1}) -> ...) -> P_1 with monotone
// parts, stored innermost-first: parts[0] is P_k, parts.back() is P_1.
struct ImplicativeForm {
  std::vector<TruthTable> parts;
  int arrows() const { return static_cast<int>(parts.size()) - 1; }
};

// Dual decomposition over the boolean cube; parts come out monotone, with at
// most arity arrows, and the nesting is re-checked against the input table
// before returning.
ImplicativeForm synth_inf(const TruthTable& tt);

// Join of positive monomials over the minimal true points; the canonical
// formula for a monotone part.
Formula monotone_dnf(const TruthTable& part);

// Left-nested implication chain over the monotone parts' DNFs.
Formula inf_formula(const TruthTable& tt);

struct EquivVerdict {
  bool equal = false;
  std::optional<std::vector<int>> witness;  // first mismatching assignment
};

EquivVerdict verify_equiv(const Formula& f, const TruthTable& tt);

TruthTable tt_of_formula(const Formula& f, int arity);

struct BaselineSizes {
  int dnf_terms = 0;    // minterms, no minimisation
  int cnf_clauses = 0;  // maxterms, no minimisation
  int inf_arrows = 0;
  int inf_literals = 0;  // variable occurrences in the INF formula
};

BaselineSizes baseline_sizes(const TruthTable& tt);

}  // namespace monoforms
