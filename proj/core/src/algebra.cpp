#include "monoforms/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace monoforms {

namespace {

constexpr int max_levels = 16;
constexpr int max_subset_levels = 12;

std::string level_set_text(const Poset& levels, unsigned mask) {
  std::string text = "{";
  bool first = true;
  for (int l = 0; l < levels.size(); ++l)
    if (mask & (1u << l)) {
      if (!first) text += ",";
      text += levels.element(l);
      first = false;
    }
  return text + "}";
}

}  // namespace

const char* axiom_system_name(AxiomSystem s) {
  switch (s) {
    case AxiomSystem::A: return "A";
    case AxiomSystem::A_star: return "A*";
    case AxiomSystem::B: return "B";
    case AxiomSystem::B_star: return "B*";
    case AxiomSystem::B_plus: return "B+";
    case AxiomSystem::B_plus_star: return "B+*";
  }
  return "?";
}

AxiomSystem parse_axiom_system(std::string_view text) {
  if (text == "A") return AxiomSystem::A;
  if (text == "A*") return AxiomSystem::A_star;
  if (text == "B") return AxiomSystem::B;
  if (text == "B*") return AxiomSystem::B_star;
  if (text == "B+") return AxiomSystem::B_plus;
  if (text == "B+*") return AxiomSystem::B_plus_star;
  throw error(errc::unknown_name, "unknown axiom system '" + std::string(text) + "'");
}

bool axiom_system_is_dual(AxiomSystem s) {
  return s == AxiomSystem::A_star || s == AxiomSystem::B_star || s == AxiomSystem::B_plus_star;
}

Algebra Algebra::from_tables(PosetPtr levels, Orientation orientation,
                             std::vector<int> boxminus, std::vector<int> boxplus,
                             std::vector<int> dot, SetForm set_form, std::string name) {
  const int q = levels->size();
  if (q < 1 || q > max_levels)
    throw error(errc::domain_too_large, "algebra over " + std::to_string(q) + " levels");
  auto check_table = [&](const std::vector<int>& t, size_t want, const char* which) {
    if (t.size() != want)
      throw error(errc::table_shape_mismatch,
                  std::string(which) + " table has " + std::to_string(t.size()) +
                      " entries, expected " + std::to_string(want));
    for (int v : t)
      if (v < 0 || v >= q)
        throw error(errc::level_out_of_range,
                    std::string(which) + " table value " + std::to_string(v) + " out of range");
  };
  check_table(boxminus, static_cast<size_t>(q) * q, "boxminus");
  check_table(boxplus, static_cast<size_t>(q) * q, "boxplus");
  check_table(dot, static_cast<size_t>(q), "dot");

  Algebra alg;
  alg.levels_ = std::move(levels);
  alg.orientation_ = orientation;
  alg.set_form_ = set_form;
  alg.boxminus_ = std::move(boxminus);
  alg.boxplus_ = std::move(boxplus);
  alg.dot_ = std::move(dot);
  alg.name_ = std::move(name);
  alg.levels_chain_like_ = alg.levels_->is_chain_like();
  alg.check_aci();
  return alg;
}

void Algebra::check_aci() {
  const int q = levels_->size();
  aci_checked_ = true;
  aci_ok_ = true;
  for (int a = 0; a < q && aci_ok_; ++a) {
    if (boxplus(a, a) != a) aci_ok_ = false;
    for (int b = 0; b < q && aci_ok_; ++b) {
      if (boxplus(a, b) != boxplus(b, a)) aci_ok_ = false;
      for (int c = 0; c < q && aci_ok_; ++c)
        if (boxplus(boxplus(a, b), c) != boxplus(a, boxplus(b, c))) aci_ok_ = false;
    }
  }
}

Algebra Algebra::builtin(std::string_view name) {
  std::string_view base = name;
  int q = 2;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    auto tail = name.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), q);
    if (ec != std::errc() || ptr != tail.data() + tail.size())
      throw error(errc::unknown_name, "bad algebra name '" + std::string(name) + "'");
  }

  bool dual;
  if (base == "boolean-primal" || base == "chain-primal")
    dual = false;
  else if (base == "boolean-dual" || base == "chain-dual")
    dual = true;
  else
    throw error(errc::unknown_name, "unknown algebra '" + std::string(name) + "'");

  const bool boolean = base.starts_with("boolean");
  if (boolean) {
    if (name.find(':') != std::string_view::npos)
      throw error(errc::unknown_name, "boolean algebras take no size parameter");
    q = 2;
  } else {
    if (name.find(':') == std::string_view::npos)
      throw error(errc::unknown_name, "chain algebras need a size, e.g. 'chain-primal:4'");
    if (q < 2 || q > max_levels)
      throw error(errc::chain_size_out_of_range,
                  "chain size " + std::to_string(q) + " not in [2, 16]");
  }

  const int top = q - 1;
  std::vector<int> bminus(static_cast<size_t>(q) * q);
  std::vector<int> bplus(static_cast<size_t>(q) * q);
  std::vector<int> dot(q, dual ? top : 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      size_t i = static_cast<size_t>(a) * q + b;
      if (dual) {
        bminus[i] = std::min(top, top - a + b);  // Lukasiewicz-style implication
        bplus[i] = std::min(a, b);
      } else {
        bminus[i] = std::max(a - b, 0);  // truncated subtraction
        bplus[i] = std::max(a, b);
      }
    }

  Algebra alg = from_tables(Poset::chain(q), dual ? Orientation::dual : Orientation::primal,
                            std::move(bminus), std::move(bplus), std::move(dot),
                            SetForm::order_bound, std::string(name));

  std::vector<AxiomSystem> advertised =
      dual ? std::vector<AxiomSystem>{AxiomSystem::A_star, AxiomSystem::B_star,
                                      AxiomSystem::B_plus_star}
           : std::vector<AxiomSystem>{AxiomSystem::A, AxiomSystem::B, AxiomSystem::B_plus};
  for (AxiomSystem s : advertised) {
    bool needs_subsets = s == AxiomSystem::A || s == AxiomSystem::A_star;
    if (needs_subsets && q > max_subset_levels) continue;
    AxiomReport report = check_axioms(alg, s);
    if (!report.all_passed())
      throw error(errc::algebra_defect,
                  "builtin algebra '" + alg.name_ + "' failed system " + axiom_system_name(s));
    alg.record_verified(s);
  }
  return alg;
}

int Algebra::solve_residual(int approx, int target) const {
  if (!working_leq(target, approx))
    throw error(errc::algebra_defect,
                "solve_residual called outside its regime: target " +
                    levels_->element(target) + " is not below approx " +
                    levels_->element(approx) + " in the working order",
                {levels_->element(approx), levels_->element(target)});
  for (int z = 0; z < levels_->size(); ++z)
    if (compose(approx, z) == target && working_leq(dot(approx), z)) return z;
  throw error(errc::no_residual,
              "no residual z with compose(" + levels_->element(approx) + ", z) = " +
                  levels_->element(target) + "; the algebra violates axiom 4",
              {levels_->element(approx), levels_->element(target)});
}

int Algebra::set_join(std::span<const int> values) const {
  if (values.empty())
    throw error(errc::shape_mismatch, "set_join applied to an empty collection");
  if (set_form_ == SetForm::fold) {
    int acc = values[0];
    for (size_t i = 1; i < values.size(); ++i) acc = boxplus(acc, values[i]);
    return acc;
  }
  // On totally ordered levels the bound is the working maximum.
  if (levels_chain_like_) {
    int best = values[0];
    for (size_t i = 1; i < values.size(); ++i)
      if (working_leq(best, values[i])) best = values[i];
    return best;
  }
  // Least upper bound in the working order.
  const int q = levels_->size();
  for (int cand = 0; cand < q; ++cand) {
    bool upper = true;
    for (int v : values)
      if (!working_leq(v, cand)) {
        upper = false;
        break;
      }
    if (!upper) continue;
    bool least = true;
    for (int other = 0; other < q && least; ++other) {
      if (other == cand) continue;
      bool other_upper = true;
      for (int v : values)
        if (!working_leq(v, other)) {
          other_upper = false;
          break;
        }
      if (other_upper && !working_leq(cand, other)) least = false;
    }
    if (least) return cand;
  }
  throw error(errc::algebra_defect, "level set has no least upper bound in the working order");
}

std::optional<int> Algebra::dot_constant() const {
  for (int l : dot_)
    if (l != dot_[0]) return std::nullopt;
  return dot_[0];
}

int Algebra::working_top() const {
  const int q = levels_->size();
  for (int cand = 0; cand < q; ++cand) {
    bool maximal = true;
    for (int other = 0; other < q; ++other)
      if (other != cand && working_leq(cand, other) && !working_leq(other, cand)) {
        maximal = false;
        break;
      }
    if (maximal) return cand;
  }
  throw error(errc::shape_mismatch, "level poset has no maximal element");
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.passed; });
}

AxiomReport check_axioms(const Algebra& alg, AxiomSystem system, const Poset* domain) {
  const Poset& levels = alg.levels();
  const int q = levels.size();
  if (q > max_levels)
    throw error(errc::domain_too_large, "axiom check over " + std::to_string(q) + " levels");

  const bool star = axiom_system_is_dual(system);
  const bool set_based = system == AxiomSystem::A || system == AxiomSystem::A_star;
  const bool with_b5 = system == AxiomSystem::B_plus || system == AxiomSystem::B_plus_star;
  if (set_based && q > max_subset_levels)
    throw error(errc::domain_too_large,
                "subset enumeration for the set form needs at most 12 levels, got " +
                    std::to_string(q));

  // Primal-form view: starred systems flip the order and read boxminus with
  // the residual-first convention.
  auto vleq = [&](int a, int b) { return star ? levels.leq(b, a) : levels.leq(a, b); };
  auto vbminus = [&](int approx, int res) {
    return star ? alg.boxminus(res, approx) : alg.boxminus(approx, res);
  };
  auto star_suffix = [&](const char* id) { return std::string(id) + (star ? "*" : ""); };

  AxiomReport report;
  report.system = system;

  // Axiom 1 concerns the map domain M, not L.
  {
    AxiomCheck c;
    c.axiom = star_suffix(set_based ? "A1" : "B1");
    c.passed = true;
    if (domain != nullptr && domain->size() <= max_subset_levels && domain->size() > 0) {
      auto dleq = [&](int a, int b) { return star ? domain->leq(b, a) : domain->leq(a, b); };
      const int m = domain->size();
      for (unsigned mask = 1; mask < (1u << m) && c.passed; ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < m; ++i)
          if (mask & (1u << i)) subset.push_back(i);
        std::vector<int> frontier =
            star ? domain->maximal_of(subset) : domain->minimal_of(subset);
        for (int s : subset) {
          bool dominated = false;
          for (int f : frontier)
            if (dleq(f, s)) {
              dominated = true;
              break;
            }
          if (!dominated) {
            c.passed = false;
            c.note = "element " + domain->element(s) + " has no frontier element below it";
            c.counterexample = {domain->element(s)};
            break;
          }
        }
        for (size_t i = 0; i < frontier.size() && c.passed; ++i)
          for (size_t j = 0; j < frontier.size(); ++j)
            if (i != j && dleq(frontier[i], frontier[j])) {
              c.passed = false;
              c.note = "frontier is not an antichain";
              c.counterexample = {domain->element(frontier[i]), domain->element(frontier[j])};
              break;
            }
      }
      if (c.passed) c.note = "checked over all subsets of the domain";
    } else {
      c.note = "holds by finiteness (domain not enumerated)";
    }
    report.checks.push_back(std::move(c));
  }

  // Axiom 2: upper bound + inclusion monotonicity of the set form (system A),
  // or the plain binary upper-bound axiom (system B).
  if (set_based) {
    AxiomCheck c;
    c.axiom = star_suffix("A2");
    c.passed = true;
    const unsigned full = (1u << q) - 1;
    std::vector<int> join_of(full + 1, -1);
    std::vector<int> scratch;
    for (unsigned mask = 1; mask <= full && c.passed; ++mask) {
      scratch.clear();
      for (int l = 0; l < q; ++l)
        if (mask & (1u << l)) scratch.push_back(l);
      try {
        join_of[mask] = alg.set_join(scratch);
      } catch (const error&) {
        c.passed = false;
        c.note = "set form undefined for " + level_set_text(levels, mask);
        break;
      }
      for (int l : scratch)
        if (!vleq(l, join_of[mask])) {
          c.passed = false;
          c.note = "level " + levels.element(l) + " is not below the join of " +
                   level_set_text(levels, mask);
          c.counterexample = {levels.element(l)};
          break;
        }
    }
    for (unsigned sup = 1; sup <= full && c.passed; ++sup) {
      // Enumerate proper nonempty submasks of sup.
      for (unsigned sub = (sup - 1) & sup; sub != 0 && c.passed; sub = (sub - 1) & sup) {
        if (!vleq(join_of[sub], join_of[sup])) {
          c.passed = false;
          c.note = "join of " + level_set_text(levels, sub) + " is not below the join of " +
                   level_set_text(levels, sup);
        }
      }
    }
    if (c.passed) c.note = "checked over all nonempty subsets";
    report.checks.push_back(std::move(c));
  } else {
    AxiomCheck c;
    c.axiom = star_suffix("B2");
    c.passed = true;
    for (int x = 0; x < q && c.passed; ++x)
      for (int y = 0; y < q; ++y) {
        int join = alg.boxplus(x, y);
        if (!vleq(x, join) || !vleq(y, join)) {
          c.passed = false;
          c.note = "boxplus(" + levels.element(x) + "," + levels.element(y) +
                   ") is not an upper bound";
          c.counterexample = {levels.element(x), levels.element(y)};
          break;
        }
      }
    report.checks.push_back(std::move(c));
  }

  // Axiom 3: compose(l, dot(l)) = l and dot is monotone.
  {
    AxiomCheck c;
    c.axiom = star_suffix(set_based ? "A3" : "B3");
    c.passed = true;
    for (int l = 0; l < q; ++l)
      if (vbminus(l, alg.dot(l)) != l) {
        c.passed = false;
        c.note = "boxminus(" + levels.element(l) + ", dot) != " + levels.element(l);
        c.counterexample = {levels.element(l)};
        break;
      }
    for (int l = 0; l < q && c.passed; ++l)
      for (int lp = 0; lp < q; ++lp)
        if (vleq(l, lp) && !vleq(alg.dot(l), alg.dot(lp))) {
          c.passed = false;
          c.note = "dot is not monotone on (" + levels.element(l) + "," + levels.element(lp) + ")";
          c.counterexample = {levels.element(l), levels.element(lp)};
          break;
        }
    report.checks.push_back(std::move(c));
  }

  // Axiom 4: residual existence by witness search.
  {
    AxiomCheck c;
    c.axiom = star_suffix(set_based ? "A4" : "B4");
    c.passed = true;
    for (int l = 0; l < q && c.passed; ++l)
      for (int lp = 0; lp < q; ++lp) {
        if (!vleq(l, lp)) continue;
        bool found = false;
        for (int lpp = 0; lpp < q; ++lpp)
          if (vbminus(lp, lpp) == l && vleq(alg.dot(lp), lpp)) {
            found = true;
            break;
          }
        if (!found) {
          c.passed = false;
          c.note = "no residual for l=" + levels.element(l) + ", l'=" + levels.element(lp);
          c.counterexample = {levels.element(l), levels.element(lp)};
          break;
        }
      }
    report.checks.push_back(std::move(c));
  }

  if (with_b5) {
    AxiomCheck c;
    c.axiom = star_suffix("B5+");
    c.passed = true;
    for (int l = 0; l < q && c.passed; ++l) {
      bool found = false;
      for (int cand = 0; cand < q && !found; ++cand) {
        if (!vleq(l, cand)) continue;
        bool maximal = true;
        for (int other = 0; other < q; ++other)
          if (other != cand && vleq(cand, other) && !vleq(other, cand)) {
            maximal = false;
            break;
          }
        found = maximal;
      }
      if (!found) {
        c.passed = false;
        c.note = "no maximal level above " + levels.element(l);
        c.counterexample = {levels.element(l)};
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

}  // namespace monoforms
