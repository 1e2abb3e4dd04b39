#include "monoforms/inf.hpp"

#include <algorithm>

#include "monoforms/decompose.hpp"

namespace monoforms {

namespace {

const Algebra& boolean_dual() {
  static const Algebra alg = Algebra::builtin("boolean-dual");
  return alg;
}

int table_arity(size_t length) {
  if (length < 2) return -1;
  int n = 0;
  size_t v = length;
  while (v > 1) {
    if (v % 2 != 0) return -1;
    v /= 2;
    ++n;
  }
  return n;
}

}  // namespace

TruthTable TruthTable::parse(std::string_view text) {
  for (char c : text)
    if (c != '0' && c != '1')
      throw error(errc::bad_char, std::string("bad truth table character '") + c + "'");
  int n = table_arity(text.size());
  if (n < 0)
    throw error(errc::bad_length,
                "truth table length " + std::to_string(text.size()) + " is not a power of two");
  if (n > Poset::max_cube_arity)
    throw error(errc::arity_out_of_range, "truth table arity " + std::to_string(n));
  return TruthTable{n, std::string(text)};
}

bool TruthTable::monotone() const {
  const int n = arity;
  const int points = 1 << n;
  // The true set is up-closed iff it is closed under single-bit raises.
  for (int p = 0; p < points; ++p) {
    if (at(p) == 0) continue;
    for (int j = 0; j < n; ++j) {
      int raised = p | (1 << j);
      if (raised != p && at(raised) == 0) return false;
    }
  }
  return true;
}

ImplicativeForm synth_inf(const TruthTable& tt) {
  auto cube = Poset::boolean_cube(tt.arity);
  std::vector<int> table(static_cast<size_t>(1) << tt.arity);
  for (size_t i = 0; i < table.size(); ++i) table[i] = tt.at(static_cast<int>(i));
  PosetMap psi(cube, boolean_dual().levels_ptr(), std::move(table));

  DecomposeResult result = decompose(psi, boolean_dual(), Strategy::t1);

  ImplicativeForm inf;
  inf.parts.reserve(result.form.parts.size());
  for (auto it = result.form.parts.rbegin(); it != result.form.parts.rend(); ++it) {
    std::string values(static_cast<size_t>(1) << tt.arity, '0');
    for (int p = 0; p < static_cast<int>(values.size()); ++p)
      values[static_cast<size_t>(p)] = static_cast<char>('0' + it->at(p));
    inf.parts.push_back(TruthTable{tt.arity, std::move(values)});
  }

  if (inf.arrows() > tt.arity)
    throw error(errc::iteration_overflow,
                "implicative form has " + std::to_string(inf.arrows()) +
                    " arrows for arity " + std::to_string(tt.arity));

  // Independent read-back: fold the nesting directly over the part tables.
  for (int p = 0; p < (1 << tt.arity); ++p) {
    int acc = inf.parts.front().at(p);
    for (size_t i = 1; i < inf.parts.size(); ++i)
      acc = acc == 1 ? inf.parts[i].at(p) : 1;  // classical implication
    if (acc != tt.at(p))
      throw error(errc::shape_mismatch,
                  "implicative form disagrees with the input at point " + std::to_string(p));
  }
  return inf;
}

Formula monotone_dnf(const TruthTable& part) {
  if (!part.monotone())
    throw error(errc::not_monotone, "monotone_dnf needs a monotone truth table");
  const int n = part.arity;
  const int points = 1 << n;

  std::vector<int> minimal;
  for (int p = 0; p < points; ++p) {
    if (part.at(p) == 0) continue;
    bool is_minimal = true;
    for (int j = 0; j < n && is_minimal; ++j) {
      int lowered = p & ~(1 << j);
      if (lowered != p && part.at(lowered) == 1) is_minimal = false;
    }
    if (is_minimal) minimal.push_back(p);
  }
  if (minimal.empty()) return Formula::lit(0);

  // Descending point index is the variable-lexicographic order on the
  // antichain of minimal points.
  std::sort(minimal.begin(), minimal.end(), std::greater<int>());
  std::optional<Formula> acc;
  for (int p : minimal) {
    std::optional<Formula> term;
    for (int j = 1; j <= n; ++j) {
      if (!(p & (1 << (n - j)))) continue;
      Formula v = Formula::var(j);
      term = term ? Formula::bin(FormulaOp::band, std::move(*term), std::move(v))
                  : std::move(v);
    }
    Formula monomial = term ? std::move(*term) : Formula::lit(1);
    acc = acc ? Formula::bin(FormulaOp::bor, std::move(*acc), std::move(monomial))
              : std::move(monomial);
  }
  return std::move(*acc);
}

Formula inf_formula(const TruthTable& tt) {
  ImplicativeForm inf = synth_inf(tt);
  Formula acc = monotone_dnf(inf.parts.front());
  for (size_t i = 1; i < inf.parts.size(); ++i)
    acc = Formula::bin(FormulaOp::imp, std::move(acc), monotone_dnf(inf.parts[i]));

  EquivVerdict verdict = verify_equiv(acc, tt);
  if (!verdict.equal)
    throw error(errc::shape_mismatch, "INF formula disagrees with the input table");
  return acc;
}

EquivVerdict verify_equiv(const Formula& f, const TruthTable& tt) {
  if (f.max_var() > tt.arity)
    throw error(errc::arity_mismatch,
                "formula uses x" + std::to_string(f.max_var()) + " but the table has arity " +
                    std::to_string(tt.arity));
  FormulaEnv env;
  env.q = 2;
  env.arity = tt.arity;
  std::vector<int> assignment(static_cast<size_t>(tt.arity), 0);
  for (int p = 0; p < (1 << tt.arity); ++p) {
    for (int j = 0; j < tt.arity; ++j)
      assignment[static_cast<size_t>(j)] = (p >> (tt.arity - 1 - j)) & 1;
    if (evaluate_formula(f, env, assignment) != tt.at(p))
      return {false, assignment};
  }
  return {true, std::nullopt};
}

TruthTable tt_of_formula(const Formula& f, int arity) {
  if (arity < 1 || arity > Poset::max_cube_arity)
    throw error(errc::arity_out_of_range, "arity " + std::to_string(arity));
  if (f.max_var() > arity)
    throw error(errc::arity_mismatch, "formula variables exceed the requested arity");
  FormulaEnv env;
  env.q = 2;
  env.arity = arity;
  std::string values(static_cast<size_t>(1) << arity, '0');
  std::vector<int> assignment(static_cast<size_t>(arity), 0);
  for (int p = 0; p < (1 << arity); ++p) {
    for (int j = 0; j < arity; ++j)
      assignment[static_cast<size_t>(j)] = (p >> (arity - 1 - j)) & 1;
    values[static_cast<size_t>(p)] =
        static_cast<char>('0' + evaluate_formula(f, env, assignment));
  }
  return TruthTable{arity, std::move(values)};
}

BaselineSizes baseline_sizes(const TruthTable& tt) {
  BaselineSizes sizes;
  for (int p = 0; p < (1 << tt.arity); ++p)
    (tt.at(p) == 1 ? sizes.dnf_terms : sizes.cnf_clauses) += 1;
  Formula f = inf_formula(tt);
  sizes.inf_arrows = synth_inf(tt).arrows();
  for (int i = 0; i < f.node_count(); ++i)
    if (f.node(i).op == FormulaOp::var) ++sizes.inf_literals;
  return sizes;
}

}  // namespace monoforms
