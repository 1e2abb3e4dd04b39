#include "monoforms/theta.hpp"

#include <algorithm>
#include <functional>

#include "working_view.hpp"

namespace monoforms {

namespace {

using detail::working_nonmono;
using detail::working_view;
using detail::WorkingView;

int require_dot_constant(const Algebra& alg) {
  auto c = alg.dot_constant();
  if (!c)
    throw error(errc::non_constant_dot,
                "theta constructions support only constant dot operations");
  return *c;
}

// Working rank of a level on a chain-like level poset: 0 is the working
// bottom, q-1 the working top.
int working_rank(const Algebra& alg, int level) {
  int below = 0;
  for (int l = 0; l < alg.level_count(); ++l)
    if (l != level && alg.working_leq(l, level)) ++below;
  return below;
}

int level_of_rank(const Algebra& alg, int rank) {
  for (int l = 0; l < alg.level_count(); ++l)
    if (working_rank(alg, l) == rank) return l;
  throw error(errc::level_out_of_range, "no level of rank " + std::to_string(rank));
}

}  // namespace

ThetaFunction special_theta(const PosetPtr& domain, const Algebra& alg, int y, int x) {
  const auto dv = working_view(*domain, alg);
  auto preds = dv.cover_preds(x);
  if (std::find(preds.begin(), preds.end(), y) == preds.end())
    throw error(errc::not_cover_pair,
                "(" + domain->element(y) + ", " + domain->element(x) +
                    ") is not a cover pair in the working order",
                {domain->element(y), domain->element(x)});
  const int dot_const = require_dot_constant(alg);
  const int top = alg.working_top();

  std::vector<int> table(domain->size(), dot_const);
  for (int z : dv.up(x)) table[z] = top;
  ThetaFunction theta{PosetMap(domain, alg.levels_ptr(), std::move(table)),
                      ThetaKind::special, x, y, -1, -1};
  for (int b = 0; b < domain->size(); ++b)
    for (int a : dv.down(b))
      if (a != b && !alg.working_leq(theta.table.at(a), theta.table.at(b)))
        throw error(errc::not_monotone, "special theta failed its monotonicity check");
  return theta;
}

std::vector<int> gamma(int q, int i) {
  if (q < 2 || q > 16) throw error(errc::chain_size_out_of_range, "q=" + std::to_string(q));
  if (i < 0 || i > q - 1)
    throw error(errc::level_out_of_range, "gamma threshold " + std::to_string(i));
  std::vector<int> table(q, 0);
  for (int v = 0; v < q; ++v) table[v] = i <= v ? q - 1 : 0;
  return table;
}

ThetaFunction theta_from_gamma(int q, int n, int i, int j) {
  if (j < 1 || j > n)
    throw error(errc::index_out_of_range, "variable index " + std::to_string(j));
  auto g = gamma(q, i);
  auto domain = Poset::grid(q, n);
  auto levels = Poset::chain(q);

  int div = 1;
  for (int k = n - 1; k >= j; --k) div *= q;
  std::vector<int> table(domain->size());
  for (int z = 0; z < domain->size(); ++z) table[z] = g[(z / div) % q];

  ThetaFunction theta{PosetMap(domain, levels, std::move(table)), ThetaKind::gamma_derived,
                      -1, -1, i, j};
  auto verdict = is_monotone(theta.table);
  if (!verdict.monotone)
    throw error(errc::not_monotone, "gamma-derived theta failed its monotonicity check");
  return theta;
}

KClass KClass::for_domain(PosetPtr domain, std::shared_ptr<const Algebra> algebra) {
  KClass k;
  k.domain_ = std::move(domain);
  k.algebra_ = std::move(algebra);
  require_dot_constant(*k.algebra_);
  if (!k.algebra_->levels().is_chain_like())
    throw error(errc::not_representable, "K classes are built over chain-like level posets");
  return k;
}

ThetaFunction KClass::generator(int x) const {
  const auto dv = working_view(*domain_, *algebra_);
  auto preds = dv.cover_preds(x);
  if (!preds.empty()) return special_theta(domain_, *algebra_, preds.front(), x);

  const int dot_const = require_dot_constant(*algebra_);
  const int top = algebra_->working_top();
  std::vector<int> table(domain_->size(), dot_const);
  for (int z : dv.up(x)) table[z] = top;
  return ThetaFunction{PosetMap(domain_, algebra_->levels_ptr(), std::move(table)),
                       ThetaKind::principal, x, -1, -1, -1};
}

std::vector<ThetaFunction> KClass::generators() const {
  std::vector<ThetaFunction> result;
  result.reserve(static_cast<size_t>(domain_->size()));
  for (int x = 0; x < domain_->size(); ++x) result.push_back(generator(x));
  return result;
}

PosetMap KClass::meet(const PosetMap& f, const PosetMap& g) const {
  if (!f.domain().same_order_as(g.domain()) || !f.codomain().same_order_as(g.codomain()))
    throw error(errc::shape_mismatch, "meet of maps over different posets");
  std::vector<int> table(f.domain().size());
  for (int z = 0; z < f.domain().size(); ++z) {
    int a = f.at(z), b = g.at(z);
    // Working-order infimum on a chain-like level poset.
    table[z] = algebra_->working_leq(a, b) ? a : b;
  }
  return PosetMap(f.domain_ptr(), f.codomain_ptr(), std::move(table));
}

bool KClass::contains(const PosetMap& f) const {
  const auto dv = working_view(*domain_, *algebra_);
  for (int x = 0; x < domain_->size(); ++x) {
    auto cone = dv.up(x);
    std::vector<char> inside(static_cast<size_t>(domain_->size()), 0);
    for (int z : cone) inside[static_cast<size_t>(z)] = 1;
    int hi = f.at(x);
    int lo = -1;
    bool shape_ok = true;
    for (int z = 0; z < domain_->size() && shape_ok; ++z) {
      if (inside[static_cast<size_t>(z)]) {
        if (f.at(z) != hi) shape_ok = false;
      } else if (lo < 0) {
        lo = f.at(z);
      } else if (f.at(z) != lo) {
        shape_ok = false;
      }
    }
    if (shape_ok && (lo < 0 || algebra_->working_leq(lo, hi))) return true;
  }
  return false;
}

namespace {

// Coordinate grounding of an up-cone indicator on an unreversed grid:
// the meet over constrained coordinates of gamma thresholds, plain
// variables when the grid is boolean.
Formula ground_cone_on_grid(const Poset& grid, int root, int scale_rank, const Algebra& alg) {
  auto shape = *grid.grid_shape();
  const int q_levels = alg.level_count();
  std::optional<Formula> acc;
  for (int j = 1; j <= shape.arity; ++j) {
    int div = 1;
    for (int k = shape.arity - 1; k >= j; --k) div *= shape.q;
    int digit = (root / div) % shape.q;
    if (digit == 0) continue;
    Formula leaf = shape.q == 2 && q_levels == 2
                       ? Formula::var(j)
                       : Formula::unary("G" + std::to_string(digit), Formula::var(j));
    acc = acc ? Formula::bin(FormulaOp::band, std::move(*acc), std::move(leaf))
              : std::move(leaf);
  }
  Formula cone = acc ? std::move(*acc) : Formula::lit(q_levels - 1);
  if (scale_rank == q_levels - 1) return cone;
  return Formula::unary("s" + std::to_string(level_of_rank(alg, scale_rank)), std::move(cone));
}

}  // namespace

std::optional<Formula> KClass::ground(const PosetMap& f) const {
  const Algebra& alg = *algebra_;
  const auto dv = working_view(*domain_, alg);
  if (!working_nonmono(dv, alg, std::vector<int>(f.table().begin(), f.table().end())).empty())
    return std::nullopt;

  const int q = alg.level_count();
  auto shape = domain_->grid_shape();
  const bool coordinate_grounding =
      shape && !shape->reversed && alg.orientation() == Orientation::primal;

  std::optional<Formula> acc;
  for (int rank = 1; rank <= q - 1; ++rank) {
    std::vector<int> reached;
    for (int z = 0; z < domain_->size(); ++z)
      if (working_rank(alg, f.at(z)) >= rank) reached.push_back(z);
    if (reached.empty()) continue;
    std::vector<int> roots = dv.minimal_of(reached);
    // Descending canonical index; on boolean antichains this is the
    // variable-lexicographic monomial order.
    std::sort(roots.begin(), roots.end(), std::greater<int>());
    for (int root : roots) {
      Formula leaf =
          coordinate_grounding
              ? ground_cone_on_grid(*domain_, root, rank, alg)
              : [&] {
                  const int dot_const = *alg.dot_constant();
                  std::vector<int> table(static_cast<size_t>(domain_->size()), dot_const);
                  for (int z : dv.up(root)) table[static_cast<size_t>(z)] = level_of_rank(alg, rank);
                  return Formula::theta_leaf(std::move(table),
                                             domain_->element(root) + ":" +
                                                 alg.levels().element(level_of_rank(alg, rank)));
                }();
      acc = acc ? Formula::bin(FormulaOp::bplus, std::move(*acc), std::move(leaf))
                : std::move(leaf);
    }
  }
  Formula result = acc ? std::move(*acc) : Formula::lit(level_of_rank(alg, 0));

  FormulaEnv env = make_env();
  for (int z = 0; z < domain_->size(); ++z)
    if (evaluate_formula_at(result, env, z) != f.at(z)) return std::nullopt;
  return result;
}

FormulaEnv KClass::make_env() const {
  FormulaEnv env;
  env.q = algebra_->level_count();
  env.algebra = algebra_;
  env.domain = domain_;
  auto shape = domain_->grid_shape();
  env.arity = shape ? shape->arity : 0;
  const int q = env.q;
  if (shape)
    for (int d = 1; d < shape->q; ++d) {
      std::vector<int> table(static_cast<size_t>(shape->q), 0);
      for (int v = 0; v < shape->q; ++v) table[static_cast<size_t>(v)] = d <= v ? q - 1 : 0;
      env.unaries["G" + std::to_string(d)] = std::move(table);
    }
  for (int c = 1; c <= q - 2; ++c) {
    std::vector<int> table(static_cast<size_t>(q), 0);
    table[static_cast<size_t>(q - 1)] = c;
    env.unaries["s" + std::to_string(c)] = std::move(table);
  }
  return env;
}

ThetaFormResult theta_form(const PosetMap& psi, const Algebra& alg, const KClass& K) {
  if (!psi.codomain().same_order_as(alg.levels()))
    throw error(errc::shape_mismatch, "map codomain does not match the algebra's level poset");
  if (!psi.domain().same_order_as(*K.domain()))
    throw error(errc::shape_mismatch, "map domain does not match the K class");

  const AxiomSystem needed = alg.orientation() == Orientation::primal
                                 ? AxiomSystem::B_plus
                                 : AxiomSystem::B_plus_star;
  if (!alg.verified(needed)) {
    AxiomReport report = check_axioms(alg, needed);
    if (!report.all_passed())
      throw error(errc::algebra_defect, "algebra '" + alg.name() + "' does not satisfy system " +
                                            std::string(axiom_system_name(needed)));
  }
  const int dot_const = require_dot_constant(alg);
  for (int l = 0; l < alg.level_count(); ++l)
    if (alg.boxplus(l, dot_const) != l)
      throw error(errc::not_representable,
                  "boxplus does not absorb the dot constant; the theta step is not a formula");

  const Poset& domain = psi.domain();
  const auto dv = working_view(domain, alg);
  const int n = domain.size();
  const int top = alg.working_top();

  ThetaFormReport report;

  std::function<Formula(const std::vector<int>&, int)> recurse =
      [&](const std::vector<int>& table, int depth) -> Formula {
    report.max_depth = std::max(report.max_depth, depth);
    if (depth > 4 * n * n)
      throw error(errc::iteration_overflow, "theta recursion exceeded its depth bound");

    auto pairs = working_nonmono(dv, alg, table);
    if (pairs.empty()) {
      auto grounded = K.ground(PosetMap(psi.domain_ptr(), psi.codomain_ptr(), table));
      if (!grounded) {
        std::string values;
        for (size_t i = 0; i < table.size(); ++i)
          values += (i ? "," : "") + alg.levels().element(table[i]);
        throw error(errc::not_representable,
                    "monotone residual escapes the K span: [" + values + "]");
      }
      ++report.leaves;
      return std::move(*grounded);
    }

    // M1 and its working-minimal antichain; the first minimal element is the
    // cone root. Minimality forces a bad pair ending exactly at the root, so
    // the theta step always retires at least that pair.
    std::vector<char> in_m1(static_cast<size_t>(n), 0);
    for (const auto& [a, b] : pairs) {
      (void)a;
      in_m1[static_cast<size_t>(b)] = 1;
    }
    detail::working_up_close(dv, detail::working_linear_extension(dv), in_m1);
    std::vector<int> m1;
    for (int z = 0; z < n; ++z)
      if (in_m1[static_cast<size_t>(z)]) m1.push_back(z);
    const int x = dv.minimal_of(m1).front();

    std::vector<int> phi(table);
    for (int z : dv.up(x)) phi[static_cast<size_t>(z)] = alg.boxplus(table[z], top);

    auto phi_pairs = working_nonmono(dv, alg, phi);
    bool subset = std::includes(pairs.begin(), pairs.end(), phi_pairs.begin(), phi_pairs.end());
    if (!subset || phi_pairs.size() == pairs.size())
      throw error(errc::no_progress, "theta step failed to retire a non-monotone pair at " +
                                         domain.element(x));

    std::vector<int> residual(static_cast<size_t>(n));
    for (int z = 0; z < n; ++z) {
      if (!alg.working_leq(table[z], phi[z]))
        throw error(errc::algebra_defect,
                    "theta approximant is not an upper bound at " + domain.element(z));
      residual[static_cast<size_t>(z)] =
          phi[z] == table[z] ? alg.dot(table[z]) : alg.solve_residual(phi[z], table[z]);
    }

    ++report.splits;
    Formula left = recurse(phi, depth + 1);
    Formula right = recurse(residual, depth + 1);
    return Formula::bin(FormulaOp::bminus, std::move(left), std::move(right));
  };

  std::vector<int> table(psi.table().begin(), psi.table().end());
  Formula formula = recurse(table, 1);

  FormulaEnv env = K.make_env();
  for (int z = 0; z < n; ++z) {
    ++report.points_checked;
    if (evaluate_formula_at(formula, env, z) != psi.at(z))
      throw error(errc::not_representable,
                  "theta decomposition failed its exhaustive verification at " +
                      domain.element(z));
  }
  report.verified = true;
  return ThetaFormResult{std::move(formula), std::move(env), report};
}

MvResult synthesize_mv(const MvTable& table) {
  const int q = table.q;
  const int n = table.n;
  if (q < 2 || q > 16) throw error(errc::chain_size_out_of_range, "q=" + std::to_string(q));
  if (n < 1) throw error(errc::arity_out_of_range, "n=" + std::to_string(n));
  long long points = 1;
  for (int j = 0; j < n; ++j) {
    points *= q;
    if (points > (1 << 16))
      throw error(errc::table_shape_mismatch, "q^n exceeds 2^16 entries");
  }
  if (static_cast<long long>(table.values.size()) != points)
    throw error(errc::table_shape_mismatch,
                "table has " + std::to_string(table.values.size()) + " entries, expected " +
                    std::to_string(points));
  for (int v : table.values)
    if (v < 0 || v >= q)
      throw error(errc::level_out_of_range, "table value " + std::to_string(v));

  const int top = q - 1;
  // eq_c(v) = Gamma_c(v) and neg(Gamma_{c+1}(v)), with the forced ends
  // simplified away: eq_0 drops the Gamma_0 factor, eq_top the neg factor.
  auto eq_leaf = [&](int c, int j) -> Formula {
    Formula v = Formula::var(j);
    if (c == 0) return Formula::unary("neg", Formula::unary("G1", std::move(v)));
    if (c == top) return Formula::unary("G" + std::to_string(top), std::move(v));
    return Formula::bin(
        FormulaOp::band, Formula::unary("G" + std::to_string(c), Formula::var(j)),
        Formula::unary("neg", Formula::unary("G" + std::to_string(c + 1), std::move(v))));
  };

  std::optional<Formula> acc;
  std::vector<int> digits(static_cast<size_t>(n), 0);
  for (int a = 0; a < points; ++a) {
    int rest = a;
    for (int j = n - 1; j >= 0; --j) {
      digits[static_cast<size_t>(j)] = rest % q;
      rest /= q;
    }
    const int value = table.values[static_cast<size_t>(a)];
    if (value == 0) continue;  // the scaler would send the whole term to bottom
    std::optional<Formula> term;
    for (int j = 1; j <= n; ++j) {
      Formula leaf = eq_leaf(digits[static_cast<size_t>(j - 1)], j);
      term = term ? Formula::bin(FormulaOp::band, std::move(*term), std::move(leaf))
                  : std::move(leaf);
    }
    if (value != top) *term = Formula::unary("u" + std::to_string(value), std::move(*term));
    acc = acc ? Formula::bin(FormulaOp::bor, std::move(*acc), std::move(*term))
              : std::move(*term);
  }
  Formula formula = acc ? std::move(*acc) : Formula::lit(0);

  FormulaEnv env;
  env.q = q;
  env.arity = n;
  env.domain = Poset::grid(q, n);
  for (int i = 1; i <= top; ++i) env.unaries["G" + std::to_string(i)] = gamma(q, i);
  {
    std::vector<int> neg(static_cast<size_t>(q), 0);
    for (int v = 0; v < q; ++v) neg[static_cast<size_t>(v)] = top - v;
    env.unaries["neg"] = std::move(neg);
  }
  for (int c = 1; c <= top - 1; ++c) {
    std::vector<int> scaler(static_cast<size_t>(q), 0);
    scaler[static_cast<size_t>(top)] = c;
    env.unaries["u" + std::to_string(c)] = std::move(scaler);
  }

  std::vector<int> assignment(static_cast<size_t>(n), 0);
  for (int a = 0; a < points; ++a) {
    int rest = a;
    for (int j = n - 1; j >= 0; --j) {
      assignment[static_cast<size_t>(j)] = rest % q;
      rest /= q;
    }
    if (evaluate_formula(formula, env, assignment) != table.values[static_cast<size_t>(a)])
      throw error(errc::table_shape_mismatch,
                  "synthesis failed its exhaustive verification at point " + std::to_string(a));
  }
  return MvResult{std::move(formula), std::move(env)};
}

}  // namespace monoforms
