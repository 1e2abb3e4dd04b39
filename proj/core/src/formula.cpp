#include "monoforms/formula.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace monoforms {

Formula Formula::var(int j) {
  if (j < 1) throw error(errc::index_out_of_range, "variable index " + std::to_string(j));
  Formula f;
  f.nodes_.push_back({FormulaOp::var, -1, -1, j, {}});
  f.root_ = 0;
  return f;
}

Formula Formula::lit(int level) {
  if (level < 0) throw error(errc::level_out_of_range, "literal level " + std::to_string(level));
  Formula f;
  f.nodes_.push_back({FormulaOp::lit, -1, -1, level, {}});
  f.root_ = 0;
  return f;
}

Formula Formula::unary(std::string name, Formula child) {
  Formula f = std::move(child);
  f.nodes_.push_back({FormulaOp::unary, f.root_, -1, -1, std::move(name)});
  f.root_ = static_cast<int>(f.nodes_.size()) - 1;
  return f;
}

int Formula::absorb(const Formula& other) {
  const int node_offset = static_cast<int>(nodes_.size());
  const int theta_offset = static_cast<int>(thetas_.size());
  for (const FormulaNode& n : other.nodes_) {
    FormulaNode copy = n;
    if (copy.a >= 0) copy.a += node_offset;
    if (copy.b >= 0) copy.b += node_offset;
    if (copy.op == FormulaOp::theta) copy.value += theta_offset;
    nodes_.push_back(std::move(copy));
  }
  thetas_.insert(thetas_.end(), other.thetas_.begin(), other.thetas_.end());
  return node_offset;
}

Formula Formula::bin(FormulaOp op, Formula left, const Formula& right) {
  Formula f = std::move(left);
  int right_root = f.absorb(right) + right.root_;
  f.nodes_.push_back({op, f.root_, right_root, -1, {}});
  f.root_ = static_cast<int>(f.nodes_.size()) - 1;
  return f;
}

Formula Formula::theta_leaf(std::vector<int> table, std::string label) {
  Formula f;
  f.thetas_.push_back({std::move(table), std::move(label)});
  f.nodes_.push_back({FormulaOp::theta, -1, -1, 0, {}});
  f.root_ = 0;
  return f;
}

int Formula::max_var() const {
  int best = 0;
  for (const FormulaNode& n : nodes_)
    if (n.op == FormulaOp::var) best = std::max(best, n.value);
  return best;
}

bool Formula::uses_op(FormulaOp op) const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [op](const FormulaNode& n) { return n.op == op; });
}

std::vector<std::string> Formula::unary_names() const {
  std::vector<std::string> names;
  for (const FormulaNode& n : nodes_)
    if (n.op == FormulaOp::unary) names.push_back(n.name);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

namespace {

int lukasiewicz_imp(int q, int a, int b) { return std::min(q - 1, (q - 1) - a + b); }

struct EvalPoint {
  const FormulaEnv& env;
  std::span<const int> assignment;  // empty when evaluating by element index
  int element = -1;

  int coordinate(int j) const {  // 1-based
    if (!assignment.empty()) {
      if (j > static_cast<int>(assignment.size()))
        throw error(errc::arity_mismatch,
                    "variable x" + std::to_string(j) + " exceeds the assignment length");
      return assignment[static_cast<size_t>(j - 1)];
    }
    if (!env.domain || !env.domain->grid_shape())
      throw error(errc::arity_mismatch,
                  "variable access needs an assignment or a grid domain");
    auto shape = *env.domain->grid_shape();
    if (j > shape.arity)
      throw error(errc::arity_mismatch, "variable x" + std::to_string(j) + " out of range");
    int div = 1;
    for (int k = shape.arity - 1; k >= j; --k) div *= shape.q;
    return (element / div) % shape.q;
  }

  int element_index() const {
    if (element >= 0) return element;
    if (!env.domain || !env.domain->grid_shape())
      throw error(errc::arity_mismatch, "theta leaf needs a domain element");
    auto shape = *env.domain->grid_shape();
    if (static_cast<int>(assignment.size()) != shape.arity)
      throw error(errc::arity_mismatch, "assignment length does not match the grid arity");
    int index = 0;
    for (int v : assignment) {
      if (v < 0 || v >= shape.q)
        throw error(errc::level_out_of_range, "assignment value " + std::to_string(v));
      index = index * shape.q + v;
    }
    return index;
  }
};

int eval_node(const Formula& f, const EvalPoint& point, int index) {
  const FormulaEnv& env = point.env;
  const FormulaNode& n = f.node(index);
  switch (n.op) {
    case FormulaOp::var:
      return point.coordinate(n.value);
    case FormulaOp::lit:
      if (n.value >= env.q)
        throw error(errc::level_out_of_range, "literal " + std::to_string(n.value) +
                                                  " with q=" + std::to_string(env.q));
      return n.value;
    case FormulaOp::unary: {
      auto it = env.unaries.find(n.name);
      if (it == env.unaries.end())
        throw error(errc::unbound_unary, "unary '" + n.name + "' is not declared", {n.name});
      int v = eval_node(f, point, n.a);
      if (v < 0 || v >= static_cast<int>(it->second.size()))
        throw error(errc::level_out_of_range, "unary '" + n.name + "' applied out of range");
      return it->second[static_cast<size_t>(v)];
    }
    case FormulaOp::band:
      return std::min(eval_node(f, point, n.a), eval_node(f, point, n.b));
    case FormulaOp::bor:
      return std::max(eval_node(f, point, n.a), eval_node(f, point, n.b));
    case FormulaOp::imp:
      return lukasiewicz_imp(env.q, eval_node(f, point, n.a), eval_node(f, point, n.b));
    case FormulaOp::bplus:
      if (!env.algebra)
        throw error(errc::shape_mismatch, "formula uses bplus but no ambient algebra is set");
      return env.algebra->boxplus(eval_node(f, point, n.a), eval_node(f, point, n.b));
    case FormulaOp::bminus:
      if (!env.algebra)
        throw error(errc::shape_mismatch, "formula uses bminus but no ambient algebra is set");
      return env.algebra->compose(eval_node(f, point, n.a), eval_node(f, point, n.b));
    case FormulaOp::theta: {
      const auto& ref = f.thetas()[static_cast<size_t>(n.value)];
      int elem = point.element_index();
      if (elem < 0 || elem >= static_cast<int>(ref.table.size()))
        throw error(errc::index_out_of_range, "theta leaf evaluated outside its domain");
      return ref.table[static_cast<size_t>(elem)];
    }
  }
  throw error(errc::shape_mismatch, "corrupt formula node");
}

}  // namespace

int evaluate_formula(const Formula& f, const FormulaEnv& env, std::span<const int> assignment) {
  if (f.empty()) throw error(errc::shape_mismatch, "cannot evaluate an empty formula");
  // Coordinates range over the domain grid's base when one is declared,
  // which may differ from the level count.
  int coord_bound = env.q;
  if (env.domain)
    if (auto shape = env.domain->grid_shape()) coord_bound = shape->q;
  for (int v : assignment)
    if (v < 0 || v >= coord_bound)
      throw error(errc::level_out_of_range, "assignment value " + std::to_string(v) +
                                                " outside the coordinate range");
  EvalPoint point{env, assignment, -1};
  return eval_node(f, point, f.root());
}

int evaluate_formula_at(const Formula& f, const FormulaEnv& env, int element) {
  if (f.empty()) throw error(errc::shape_mismatch, "cannot evaluate an empty formula");
  if (!env.domain)
    throw error(errc::arity_mismatch, "evaluate_formula_at needs a domain poset in the env");
  if (element < 0 || element >= env.domain->size())
    throw error(errc::unknown_element, "element index " + std::to_string(element));
  EvalPoint point{env, {}, element};
  return eval_node(f, point, f.root());
}

namespace {

Formula rebuild(const Formula& f, int index, const std::map<int, Formula>& p) {
  const FormulaNode& n = f.node(index);
  switch (n.op) {
    case FormulaOp::var: {
      auto it = p.find(n.value);
      if (it == p.end())
        throw error(errc::unbound_variable,
                    "no substitution for variable x" + std::to_string(n.value));
      return it->second;
    }
    case FormulaOp::lit:
      return Formula::lit(n.value);
    case FormulaOp::unary:
      return Formula::unary(n.name, rebuild(f, n.a, p));
    case FormulaOp::theta: {
      const auto& ref = f.thetas()[static_cast<size_t>(n.value)];
      return Formula::theta_leaf(ref.table, ref.label);
    }
    default:
      return Formula::bin(n.op, rebuild(f, n.a, p), rebuild(f, n.b, p));
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<int, Formula>& p) {
  return rebuild(f, f.root(), p);
}

namespace {

void print_node(const Formula& f, int index, std::string& out) {
  const FormulaNode& n = f.node(index);
  switch (n.op) {
    case FormulaOp::var:
      out += "x" + std::to_string(n.value);
      return;
    case FormulaOp::lit:
      out += "lit:" + std::to_string(n.value);
      return;
    case FormulaOp::unary:
      out += "(u:" + n.name + " ";
      print_node(f, n.a, out);
      out += ")";
      return;
    case FormulaOp::theta:
      out += "(theta:" + f.thetas()[static_cast<size_t>(n.value)].label + ")";
      return;
    default: {
      const char* head = n.op == FormulaOp::band   ? "and"
                         : n.op == FormulaOp::bor  ? "or"
                         : n.op == FormulaOp::imp   ? "imp"
                         : n.op == FormulaOp::bplus ? "bplus"
                                                    : "bminus";
      out += "(";
      out += head;
      out += " ";
      print_node(f, n.a, out);
      out += " ";
      print_node(f, n.b, out);
      out += ")";
      return;
    }
  }
}

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw error(errc::parse_error,
                message + " at offset " + std::to_string(pos) + " in formula");
  }

  std::string_view next_atom() {
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected an atom");
    return text.substr(start, pos - start);
  }

  int parse_int(std::string_view tok, const char* what) {
    int v = -1;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
      fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
  }

  Formula parse_expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      std::string_view head = next_atom();
      if (head.starts_with("u:")) {
        Formula child = parse_expr();
        expect(')');
        return Formula::unary(std::string(head.substr(2)), std::move(child));
      }
      FormulaOp op;
      if (head == "and")
        op = FormulaOp::band;
      else if (head == "or")
        op = FormulaOp::bor;
      else if (head == "imp")
        op = FormulaOp::imp;
      else if (head == "bplus")
        op = FormulaOp::bplus;
      else if (head == "bminus")
        op = FormulaOp::bminus;
      else
        fail("unknown operator '" + std::string(head) + "'");
      Formula left = parse_expr();
      Formula right = parse_expr();
      expect(')');
      return Formula::bin(op, std::move(left), std::move(right));
    }
    std::string_view atom = next_atom();
    if (atom.starts_with("x")) return Formula::var(parse_int(atom.substr(1), "variable index"));
    if (atom.starts_with("lit:")) return Formula::lit(parse_int(atom.substr(4), "literal"));
    fail("unknown atom '" + std::string(atom) + "'");
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
};

}  // namespace

std::string print_formula(const Formula& f) {
  if (f.empty()) throw error(errc::shape_mismatch, "cannot print an empty formula");
  std::string out;
  print_node(f, f.root(), out);
  return out;
}

Formula parse_formula(std::string_view text) {
  Parser parser{text};
  Formula f = parser.parse_expr();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input after formula");
  return f;
}

}  // namespace monoforms
