#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monoforms/order.hpp"

namespace monoforms {

enum class Orientation { primal, dual };

// How the set form of boxplus is obtained from L.
//   order_bound: supremum in the working order (infimum of L for dual algebras)
//   fold: left fold of the binary boxplus table in canonical order
enum class SetForm { order_bound, fold };

enum class AxiomSystem { A, A_star, B, B_star, B_plus, B_plus_star };

const char* axiom_system_name(AxiomSystem s);
AxiomSystem parse_axiom_system(std::string_view text);  // "A", "A*", "B", "B*", "B+", "B+*"
bool axiom_system_is_dual(AxiomSystem s);

// Operation triple over a level poset L. For dual algebras the stored tables
// are the starred operations and all order-sensitive behaviour runs against
// the reversed order; compose() and solve_residual() absorb the argument-flip
// convention so callers never touch it.
class Algebra {
 public:
  static Algebra builtin(std::string_view name);  // boolean-primal, chain-dual:5, ...
  static Algebra from_tables(PosetPtr levels, Orientation orientation,
                             std::vector<int> boxminus, std::vector<int> boxplus,
                             std::vector<int> dot, SetForm set_form, std::string name = "custom");

  const Poset& levels() const { return *levels_; }
  const PosetPtr& levels_ptr() const { return levels_; }
  int level_count() const { return levels_->size(); }
  Orientation orientation() const { return orientation_; }
  SetForm set_form() const { return set_form_; }
  const std::string& name() const { return name_; }

  int boxminus(int a, int b) const { return boxminus_[index(a, b)]; }
  int boxplus(int a, int b) const { return boxplus_[index(a, b)]; }
  int dot(int l) const { return dot_[static_cast<size_t>(l)]; }
  std::span<const int> boxminus_table() const { return boxminus_; }
  std::span<const int> boxplus_table() const { return boxplus_; }
  std::span<const int> dot_table() const { return dot_; }

  // Comparison in the working order: the level order for primal algebras,
  // its reverse for dual ones.
  bool working_leq(int a, int b) const {
    return orientation_ == Orientation::primal ? levels_->leq(a, b) : levels_->leq(b, a);
  }

  // One recomposition step: boxminus(approx, residual) for primal algebras,
  // boxminus*(residual, approx) for dual ones.
  int compose(int approx, int residual) const {
    return orientation_ == Orientation::primal ? boxminus(approx, residual)
                                               : boxminus(residual, approx);
  }

  // First z in canonical enumeration with compose(approx, z) == target and
  // dot(approx) below z in the working order. Requires target below approx.
  int solve_residual(int approx, int target) const;

  // Set form of boxplus over a nonempty collection of levels.
  int set_join(std::span<const int> values) const;

  std::optional<int> dot_constant() const;  // value if the dot table is constant
  int working_top() const;                  // first maximal level in the working order

  bool aci_checked() const { return aci_checked_; }
  bool aci_ok() const { return aci_ok_; }

  const std::set<AxiomSystem>& verified_systems() const { return verified_; }
  void record_verified(AxiomSystem s) { verified_.insert(s); }
  bool verified(AxiomSystem s) const { return verified_.count(s) > 0; }

 private:
  Algebra() = default;
  size_t index(int a, int b) const {
    return static_cast<size_t>(a) * levels_->size() + static_cast<size_t>(b);
  }
  void check_aci();

  PosetPtr levels_;
  Orientation orientation_ = Orientation::primal;
  SetForm set_form_ = SetForm::order_bound;
  std::vector<int> boxminus_, boxplus_, dot_;
  std::string name_;
  bool aci_checked_ = false, aci_ok_ = false;
  bool levels_chain_like_ = false;
  std::set<AxiomSystem> verified_;
};

struct AxiomCheck {
  std::string axiom;
  bool passed = false;
  std::string note;                      // counterexample description on failure
  std::vector<std::string> counterexample;  // offending level/element ids
};

struct AxiomReport {
  AxiomSystem system;
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
};

// Exhaustive verification of an axiom system against the algebra's tables.
// A1/B1 talk about the map domain M: checked over all subsets when a domain
// with at most 12 elements is supplied, otherwise reported as holding by
// finiteness.
AxiomReport check_axioms(const Algebra& alg, AxiomSystem system, const Poset* domain = nullptr);

}  // namespace monoforms
