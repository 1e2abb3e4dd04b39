#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monoforms/algebra.hpp"
#include "monoforms/order.hpp"

namespace monoforms {

enum class FormulaOp {
  var,     // x<j>, 1-based
  lit,     // level constant
  unary,   // named unary table over the levels
  band,    // pointwise meet (min on chains)
  bor,     // pointwise join (max on chains)
  imp,     // Lukasiewicz-style implication, classical at q = 2
  bplus,   // ambient algebra boxplus
  bminus,  // ambient algebra compose step
  theta,   // opaque leaf: a stored map evaluated at the domain point
};

struct FormulaNode {
  FormulaOp op;
  int a = -1, b = -1;  // child node indices
  int value = -1;      // var index, literal level, or theta slot
  std::string name;    // unary name
};

// Expression over level-valued assignments, stored as a node pool. Formulas
// are immutable values; combinators merge pools and re-root.
class Formula {
 public:
  struct ThetaRef {
    std::vector<int> table;  // one level per domain element
    std::string label;
  };

  Formula() = default;  // empty; evaluation and printing reject it
  bool empty() const { return root_ < 0; }

  static Formula var(int j);
  static Formula lit(int level);
  static Formula unary(std::string name, Formula child);
  static Formula bin(FormulaOp op, Formula left, const Formula& right);
  static Formula theta_leaf(std::vector<int> table, std::string label);

  int root() const { return root_; }
  const FormulaNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<ThetaRef>& thetas() const { return thetas_; }

  int max_var() const;
  bool uses_op(FormulaOp op) const;
  std::vector<std::string> unary_names() const;  // sorted, unique

 private:
  int absorb(const Formula& other);  // returns node offset

  std::vector<FormulaNode> nodes_;
  std::vector<ThetaRef> thetas_;
  int root_ = -1;
};

// Everything needed to evaluate a formula: the level count, the unary tables
// it references, the ambient algebra for bplus/bminus nodes, and the domain
// poset for theta leaves or coordinate access on grids.
struct FormulaEnv {
  int q = 2;
  int arity = 0;
  std::map<std::string, std::vector<int>, std::less<>> unaries;
  std::shared_ptr<const Algebra> algebra;
  PosetPtr domain;
};

int evaluate_formula(const Formula& f, const FormulaEnv& env, std::span<const int> assignment);

// Evaluation at a domain element by canonical index; required for formulas
// with theta leaves over non-grid domains.
int evaluate_formula_at(const Formula& f, const FormulaEnv& env, int element);

// Replaces every variable leaf x<j> by p.at(j). Throws unbound_variable when
// a used variable has no image.
Formula substitute(const Formula& f, const std::map<int, Formula>& p);

std::string print_formula(const Formula& f);
Formula parse_formula(std::string_view text);

}  // namespace monoforms
