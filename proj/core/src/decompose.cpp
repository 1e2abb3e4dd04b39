#include "monoforms/decompose.hpp"

#include <algorithm>
#include <functional>

#include "working_view.hpp"

namespace monoforms {

namespace {

using detail::working_nonmono;

void ensure_algebra_adequate(const Algebra& alg) {
  const bool dual = alg.orientation() == Orientation::dual;
  std::vector<AxiomSystem> adequate =
      dual ? std::vector<AxiomSystem>{AxiomSystem::A_star, AxiomSystem::B_star,
                                      AxiomSystem::B_plus_star}
           : std::vector<AxiomSystem>{AxiomSystem::A, AxiomSystem::B, AxiomSystem::B_plus};
  for (AxiomSystem s : adequate)
    if (alg.verified(s)) return;
  AxiomSystem pair_system = dual ? AxiomSystem::B_star : AxiomSystem::B;
  AxiomReport report = check_axioms(alg, pair_system);
  if (!report.all_passed()) {
    for (const auto& c : report.checks)
      if (!c.passed)
        throw error(errc::algebra_defect,
                    "algebra '" + alg.name() + "' fails axiom " + c.axiom + ": " + c.note,
                    c.counterexample);
  }
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::t1: return "t1";
    case Strategy::t2_fold: return "t2-fold";
    case Strategy::t2_chain: return "t2-chain";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "t1") return Strategy::t1;
  if (text == "t2-fold") return Strategy::t2_fold;
  if (text == "t2-chain") return Strategy::t2_chain;
  throw error(errc::unknown_name, "unknown strategy '" + std::string(text) + "'");
}

DecomposeResult decompose(const PosetMap& psi, const Algebra& alg, Strategy strategy) {
  if (!psi.codomain().same_order_as(alg.levels()))
    throw error(errc::shape_mismatch, "map codomain does not match the algebra's level poset");
  ensure_algebra_adequate(alg);

  const Poset& domain = psi.domain();
  const int n = domain.size();
  const detail::WorkingView dv{domain, alg.orientation() == Orientation::dual};
  const std::vector<int> extension = detail::working_linear_extension(dv);

  DecompositionTrace trace;
  trace.orientation = alg.orientation();
  trace.domain = psi.domain_ptr();

  auto fail = [&](errc code, const std::string& message,
                  std::vector<std::string> witness = {}) -> decompose_error {
    return decompose_error(error(code, message, std::move(witness)), trace);
  };

  std::vector<PosetMap> parts;
  std::vector<int> current(psi.table().begin(), psi.table().end());
  std::vector<char> prev_m1;

  for (int step = 1;; ++step) {
    if (step > n + 1) throw fail(errc::iteration_overflow, "decomposition exceeded |M| steps");

    auto pairs = working_nonmono(dv, alg, current);
    if (pairs.empty()) {
      parts.emplace_back(psi.domain_ptr(), psi.codomain_ptr(), std::move(current));
      break;
    }

    // M1 = elements whose down cone contains a bad pair. Since every pair
    // (a, b) has a below b, this is the upward closure of the b's.
    std::vector<char> in_m1(n, 0);
    for (const auto& [a, b] : pairs) {
      (void)a;
      in_m1[b] = 1;
    }
    detail::working_up_close(dv, extension, in_m1);

    if (!prev_m1.empty()) {
      bool subset = true, strict = false;
      for (int i = 0; i < n; ++i) {
        if (in_m1[i] && !prev_m1[i]) subset = false;
        if (prev_m1[i] && !in_m1[i]) strict = true;
      }
      if (!subset || !strict)
        throw fail(errc::no_progress, "the M-sequence failed to shrink strictly at step " +
                                          std::to_string(step));
    }

    TraceStep ts;
    ts.step = step;
    ts.nonmono = pairs;
    for (int i = 0; i < n; ++i)
      (in_m1[i] ? ts.m1 : ts.m1_complement).push_back(i);
    ts.m1_min = dv.minimal_of(ts.m1);

    // Approximant per strategy.
    std::vector<int> phi = current;
    switch (strategy) {
      case Strategy::t1: {
        std::vector<int> values;
        for (int x : ts.m1) {
          values.clear();
          for (int y : dv.down(x)) values.push_back(current[y]);
          phi[x] = alg.set_join(values);
        }
        break;
      }
      case Strategy::t2_fold: {
        for (int x : ts.m1) {
          int acc = -1;
          for (int y : dv.down(x)) acc = acc < 0 ? current[y] : alg.boxplus(acc, current[y]);
          phi[x] = acc;
        }
        break;
      }
      case Strategy::t2_chain: {
        // phi(x) = boxplus(psi_i(x), phi(parent x)) along the spanning
        // forest with canonically-first cover predecessors as parents.
        std::vector<int> memo(n, -1);
        std::function<int(int)> eval = [&](int x) -> int {
          if (!in_m1[x]) return current[x];
          if (memo[x] >= 0) return memo[x];
          auto preds = dv.cover_preds(x);
          if (preds.empty())
            throw fail(errc::no_progress,
                       "chain strategy reached a minimal element inside M1",
                       {domain.element(x)});
          return memo[x] = alg.boxplus(current[x], eval(preds.front()));
        };
        for (int x : ts.m1) phi[x] = eval(x);
        break;
      }
    }

    trace.steps.push_back(std::move(ts));

    for (int b = 0; b < n; ++b)
      for (int a : dv.down(b))
        if (a != b && !alg.working_leq(phi[a], phi[b]))
          throw fail(errc::non_monotone_part,
                     "constructed approximant is not monotone between " + domain.element(a) +
                         " and " + domain.element(b),
                     {domain.element(a), domain.element(b)});

    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      if (!alg.working_leq(current[x], phi[x]))
        throw fail(errc::algebra_defect,
                   "approximant is not an upper bound at " + domain.element(x) +
                       "; boxplus violates its axiom 2",
                   {domain.element(x)});
      try {
        next[x] = phi[x] == current[x] ? alg.dot(current[x])
                                       : alg.solve_residual(phi[x], current[x]);
      } catch (const error& e) {
        throw decompose_error(e, trace);
      }
    }

    parts.emplace_back(psi.domain_ptr(), psi.codomain_ptr(), std::move(phi));
    current = std::move(next);
    prev_m1.assign(in_m1.begin(), in_m1.end());
  }

  ApproximatingForm form;
  form.orientation = alg.orientation();
  form.domain = psi.domain_ptr();
  form.codomain = psi.codomain_ptr();
  form.parts = std::move(parts);
  return {std::move(form), std::move(trace)};
}

PosetMap recompose(const ApproximatingForm& form, const Algebra& alg) {
  if (form.parts.empty())
    throw error(errc::shape_mismatch, "form has no parts");
  if (!form.codomain->same_order_as(alg.levels()))
    throw error(errc::shape_mismatch, "form codomain does not match the algebra's level poset");
  const int n = form.domain->size();
  for (const auto& part : form.parts)
    if (part.domain().size() != n)
      throw error(errc::shape_mismatch, "form parts disagree on the domain");

  std::vector<int> acc(form.parts.back().table().begin(), form.parts.back().table().end());
  for (int i = static_cast<int>(form.parts.size()) - 2; i >= 0; --i)
    for (int x = 0; x < n; ++x) acc[x] = alg.compose(form.parts[i].at(x), acc[x]);
  return PosetMap(form.domain, form.codomain, std::move(acc));
}

FormCheck verify_form(const ApproximatingForm& form, const PosetMap& psi, const Algebra& alg) {
  FormCheck check;
  check.parts_monotone = true;
  for (size_t i = 0; i < form.parts.size(); ++i) {
    auto verdict = is_monotone(form.parts[i]);
    if (!verdict.monotone) {
      check.parts_monotone = false;
      check.bad_part = static_cast<int>(i);
      const Poset& d = form.parts[i].domain();
      check.bad_part_witness = {d.element(verdict.witness->first),
                                d.element(verdict.witness->second)};
      check.notes.push_back("part " + std::to_string(i) + " is not monotone");
      break;
    }
  }

  check.recomposes = false;
  if (form.parts.empty() || form.domain->size() != psi.domain().size()) {
    check.notes.push_back("form and map shapes disagree");
  } else {
    PosetMap rebuilt = recompose(form, alg);
    check.recomposes = true;
    for (int x = 0; x < psi.domain().size(); ++x)
      if (rebuilt.at(x) != psi.at(x)) {
        check.recomposes = false;
        check.mismatch_element = psi.domain().element(x);
        check.notes.push_back("recomposition differs at " + *check.mismatch_element);
        break;
      }
  }

  check.bound_ok = form.compose_ops() <= form.domain->max_chain_elements();
  if (!check.bound_ok) check.notes.push_back("compose count exceeds the chain bound");
  check.passed = check.recomposes && check.parts_monotone && check.bound_ok;
  return check;
}

FormStats form_stats(const ApproximatingForm& form) {
  FormStats stats;
  stats.parts = static_cast<int>(form.parts.size());
  stats.compose_ops = form.compose_ops();
  stats.domain_chain_elements = form.domain->max_chain_elements();
  stats.bound_ok = stats.compose_ops <= stats.domain_chain_elements;
  return stats;
}

}  // namespace monoforms
