#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monoforms/algebra.hpp"
#include "monoforms/formula.hpp"
#include "monoforms/order.hpp"

namespace monoforms {

enum class ThetaKind {
  special,        // top on the up cone of x, dot-constant elsewhere; (y, x) a cover pair
  principal,      // same shape rooted at a minimal element (no cover predecessor)
  gamma_derived,  // Gamma_i applied to one coordinate of a grid
};

// Monotone building block: a fixed maximal level on an up cone and the
// dot-constant off it, possibly rescaled. Cones and tops are taken in the
// owning algebra's working order.
struct ThetaFunction {
  PosetMap table;
  ThetaKind kind;
  int x = -1, y = -1;          // up-cone root and its cover predecessor
  int gamma_level = -1;        // i for gamma-derived functions
  int gamma_var = -1;          // j (1-based) for gamma-derived functions
};

// Requires (y, x) to be a cover pair in the algebra's working order (the
// stated order for primal algebras) and a constant dot operation.
ThetaFunction special_theta(const PosetPtr& domain, const Algebra& alg, int y, int x);

// Threshold table over a q-chain: top when i <= v, bottom otherwise.
std::vector<int> gamma(int q, int i);

// Gamma_i read through coordinate j of the grid L_q^n.
ThetaFunction theta_from_gamma(int q, int n, int i, int j);

// The leaf vocabulary of the formula decomposition: up-cone indicators
// rescaled by monotone unaries, closed under the pointwise working meet.
class KClass {
 public:
  static KClass for_domain(PosetPtr domain, std::shared_ptr<const Algebra> algebra);

  const PosetPtr& domain() const { return domain_; }
  const std::shared_ptr<const Algebra>& algebra() const { return algebra_; }

  ThetaFunction generator(int x) const;  // up-cone indicator rooted at x
  std::vector<ThetaFunction> generators() const;

  PosetMap meet(const PosetMap& f, const PosetMap& g) const;
  bool contains(const PosetMap& f) const;

  // Expresses a monotone map as a bplus join of scaled generator leaves;
  // grounded to coordinate formulas on unreversed grids under a primal
  // algebra. Returns nullopt when the map escapes the span.
  std::optional<Formula> ground(const PosetMap& f) const;

  // Environment carrying every unary table ground() may emit.
  FormulaEnv make_env() const;

 private:
  KClass() = default;
  PosetPtr domain_;
  std::shared_ptr<const Algebra> algebra_;
};

struct ThetaFormReport {
  bool verified = false;
  int points_checked = 0;
  int splits = 0;       // bminus nodes introduced by theta steps
  int leaves = 0;       // grounded monotone pieces
  int max_depth = 0;
};

struct ThetaFormResult {
  Formula formula;
  FormulaEnv env;
  ThetaFormReport report;
};

// Formula-level decomposition: peel special theta functions off psi until
// every piece is monotone, then ground the pieces in K. The result uses only
// bminus/bplus internal nodes plus the admitted unaries and is verified
// pointwise against psi before returning.
ThetaFormResult theta_form(const PosetMap& psi, const Algebra& alg, const KClass& K);

// q-valued function of arity n as a row-major value table, x1 most
// significant.
struct MvTable {
  int q = 2;
  int n = 1;
  std::vector<int> values;
};

struct MvResult {
  Formula formula;
  FormulaEnv env;
};

// Pointwise synthesis over min/max and one-place functions: thresholds
// Gamma_i, the top/bottom swap, and the level scalers. Verified exhaustively
// before returning.
MvResult synthesize_mv(const MvTable& table);

}  // namespace monoforms
