#include "monoforms/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace monoforms::io {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error(errc::parse_error, "malformed JSON input");
  return j;
}

// Wrong-typed fields surface as json exceptions; fold them into parse errors.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("malformed input: ") + e.what());
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

int require_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw error(errc::parse_error, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

PosetPtr poset_from_value(const ordered_json& j);

ordered_json poset_to_value(const Poset& p) {
  if (auto shape = p.grid_shape()) {
    if (shape->reversed)
      throw error(errc::io_error, "reversed grid posets have no file representation");
    if (shape->arity == 1) return "chain:" + std::to_string(shape->q);
    if (shape->q == 2) return "cube:" + std::to_string(shape->arity);
    return "grid:" + std::to_string(shape->q) + ":" + std::to_string(shape->arity);
  }
  ordered_json j;
  j["elements"] = ordered_json::array();
  for (int i = 0; i < p.size(); ++i) j["elements"].push_back(p.element(i));
  j["covers"] = ordered_json::array();
  for (const auto& [a, b] : p.cover_pairs())
    j["covers"].push_back(ordered_json::array({p.element(a), p.element(b)}));
  return j;
}

int parse_spec_int(std::string_view text) {
  int v = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw error(errc::parse_error, "bad number '" + std::string(text) + "' in poset spec");
  return v;
}

PosetPtr poset_from_spec_string(std::string_view spec) {
  if (spec.starts_with("cube:")) return Poset::boolean_cube(parse_spec_int(spec.substr(5)));
  if (spec.starts_with("chain:")) return Poset::chain(parse_spec_int(spec.substr(6)));
  if (spec.starts_with("grid:")) {
    auto rest = spec.substr(5);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw error(errc::parse_error, "grid spec needs 'grid:q:n'");
    return Poset::grid(parse_spec_int(rest.substr(0, colon)),
                       parse_spec_int(rest.substr(colon + 1)));
  }
  throw error(errc::parse_error, "unknown poset spec '" + std::string(spec) + "'");
}

PosetPtr poset_from_value(const ordered_json& j) {
  if (j.is_string()) return poset_from_spec_string(j.get<std::string>());
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    throw error(errc::parse_error, "poset needs 'elements' and 'covers'");
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw error(errc::parse_error, "poset elements must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : j["covers"]) {
    if (!c.is_array() || c.size() != 2)
      throw error(errc::parse_error, "poset covers must be [low, high] pairs");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  return Poset::from_covers(std::move(elements), covers);
}

PosetMap map_from_value(const ordered_json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") ||
      !j.contains("values"))
    throw error(errc::parse_error, "map needs 'domain', 'codomain' and 'values'");
  PosetPtr domain = poset_from_value(j["domain"]);
  PosetPtr codomain = poset_from_value(j["codomain"]);
  if (!j["values"].is_object()) throw error(errc::parse_error, "map 'values' must be an object");
  std::vector<int> table(static_cast<size_t>(domain->size()), -1);
  for (const auto& [key, value] : j["values"].items()) {
    if (!value.is_string()) throw error(errc::parse_error, "map values must be element ids");
    table[static_cast<size_t>(domain->index_of(key))] =
        codomain->index_of(value.get<std::string>());
  }
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i] < 0)
      throw error(errc::parse_error,
                  "map is missing a value for '" + domain->element(static_cast<int>(i)) + "'");
  return PosetMap(std::move(domain), std::move(codomain), std::move(table));
}

ordered_json map_values_to_value(const PosetMap& f) {
  ordered_json values = ordered_json::object();
  for (int x = 0; x < f.domain().size(); ++x)
    values[f.domain().element(x)] = f.codomain().element(f.at(x));
  return values;
}

ordered_json map_to_value(const PosetMap& f) {
  ordered_json j;
  j["domain"] = poset_to_value(f.domain());
  j["codomain"] = poset_to_value(f.codomain());
  j["values"] = map_values_to_value(f);
  return j;
}

std::shared_ptr<const Algebra> algebra_from_value(const ordered_json& j) {
  if (j.is_string())
    return std::make_shared<const Algebra>(Algebra::builtin(j.get<std::string>()));
  const int q = require_int(j, "levels");
  std::string orientation_text = j.value("orientation", std::string("primal"));
  Orientation orientation;
  if (orientation_text == "primal")
    orientation = Orientation::primal;
  else if (orientation_text == "dual")
    orientation = Orientation::dual;
  else
    throw error(errc::parse_error, "orientation must be 'primal' or 'dual'");
  auto read_matrix = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array())
      throw error(errc::parse_error, std::string("missing table '") + key + "'");
    std::vector<int> flat;
    for (const auto& row : j[key]) {
      if (!row.is_array())
        throw error(errc::parse_error, std::string(key) + " must be a matrix");
      for (const auto& v : row) flat.push_back(v.get<int>());
    }
    return flat;
  };
  std::vector<int> dot;
  if (!j.contains("dot") || !j["dot"].is_array())
    throw error(errc::parse_error, "missing table 'dot'");
  for (const auto& v : j["dot"]) dot.push_back(v.get<int>());
  return std::make_shared<const Algebra>(
      Algebra::from_tables(Poset::chain(q), orientation, read_matrix("boxminus"),
                           read_matrix("boxplus"), std::move(dot), SetForm::fold, "custom"));
}

ordered_json algebra_to_value(const Algebra& alg) {
  if (alg.name() != "custom") return alg.name();
  const int q = alg.level_count();
  ordered_json j;
  j["levels"] = q;
  j["orientation"] = alg.orientation() == Orientation::primal ? "primal" : "dual";
  auto matrix = [&](std::span<const int> table) {
    ordered_json rows = ordered_json::array();
    for (int a = 0; a < q; ++a) {
      ordered_json row = ordered_json::array();
      for (int b = 0; b < q; ++b) row.push_back(table[static_cast<size_t>(a) * q + b]);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["boxminus"] = matrix(alg.boxminus_table());
  j["boxplus"] = matrix(alg.boxplus_table());
  j["dot"] = std::vector<int>(alg.dot_table().begin(), alg.dot_table().end());
  return j;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io_error, "cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::io_error, "cannot write '" + path + "'");
  out << content;
}

PosetPtr poset_from_json(const std::string& text) {
  return guarded([&] { return poset_from_value(parse_json(text)); });
}

std::string poset_to_json(const Poset& p) {
  ordered_json j = poset_to_value(p);
  if (j.is_string()) {
    ordered_json wrapper;
    wrapper["poset"] = j;
    return dump(wrapper);
  }
  return dump(j);
}

PosetMap map_from_json(const std::string& text) {
  return guarded([&] { return map_from_value(parse_json(text)); });
}

std::string map_to_json(const PosetMap& f) { return dump(map_to_value(f)); }

std::shared_ptr<const Algebra> algebra_from_json(const std::string& text) {
  return guarded([&] { return algebra_from_value(parse_json(text)); });
}

std::string algebra_to_json(const Algebra& alg) { return dump(algebra_to_value(alg)); }

std::shared_ptr<const Algebra> resolve_algebra(const std::string& selector) {
  if (selector.starts_with("boolean-") || selector.starts_with("chain-"))
    return std::make_shared<const Algebra>(Algebra::builtin(selector));
  return algebra_from_json(read_file(selector));
}

FormFile form_from_json(const std::string& text) {
  return guarded([&]() -> FormFile {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("parts") || !j.contains("algebra"))
      throw error(errc::parse_error, "form needs 'algebra' and 'parts'");
    FormFile file;
    file.algebra = algebra_from_value(j["algebra"]);

    file.form.orientation = file.algebra->orientation();
    if (j.contains("orientation")) {
      std::string o = j["orientation"].get<std::string>();
      file.form.orientation = o == "dual" ? Orientation::dual : Orientation::primal;
    }
    if (!j.contains("domain") || !j.contains("codomain"))
      throw error(errc::parse_error, "form needs 'domain' and 'codomain'");
    file.form.domain = poset_from_value(j["domain"]);
    file.form.codomain = poset_from_value(j["codomain"]);
    if (!file.form.codomain->same_order_as(file.algebra->levels()))
      throw error(errc::parse_error, "form codomain does not match its algebra");

    if (!j["parts"].is_array() || j["parts"].empty())
      throw error(errc::parse_error, "form 'parts' must be a nonempty array");
    for (const auto& part : j["parts"]) {
      if (!part.is_object()) throw error(errc::parse_error, "form parts must be value objects");
      std::vector<int> table(static_cast<size_t>(file.form.domain->size()), -1);
      for (const auto& [key, value] : part.items())
        table[static_cast<size_t>(file.form.domain->index_of(key))] =
            file.form.codomain->index_of(value.get<std::string>());
      for (size_t i = 0; i < table.size(); ++i)
        if (table[i] < 0)
          throw error(errc::parse_error,
                      "form part is missing a value for '" +
                          file.form.domain->element(static_cast<int>(i)) + "'");
      file.form.parts.emplace_back(file.form.domain, file.form.codomain, std::move(table));
    }
    return file;
  });
}

std::string form_to_json(const ApproximatingForm& form, const Algebra& alg) {
  ordered_json j;
  j["orientation"] = form.orientation == Orientation::primal ? "primal" : "dual";
  j["domain"] = poset_to_value(*form.domain);
  j["codomain"] = poset_to_value(*form.codomain);
  j["algebra"] = algebra_to_value(alg);
  j["parts"] = ordered_json::array();
  for (const auto& part : form.parts) j["parts"].push_back(map_values_to_value(part));
  return dump(j);
}

std::string trace_to_json(const DecompositionTrace& trace) {
  const Poset& domain = *trace.domain;
  ordered_json j;
  j["orientation"] = trace.orientation == Orientation::primal ? "primal" : "dual";
  j["steps"] = ordered_json::array();
  for (const TraceStep& step : trace.steps) {
    ordered_json s;
    s["step"] = step.step;
    s["nonmono"] = ordered_json::array();
    for (const auto& [a, b] : step.nonmono)
      s["nonmono"].push_back(ordered_json::array({domain.element(a), domain.element(b)}));
    auto ids = [&](const std::vector<int>& xs) {
      ordered_json arr = ordered_json::array();
      for (int x : xs) arr.push_back(domain.element(x));
      return arr;
    };
    s["m1"] = ids(step.m1);
    s["m1_min"] = ids(step.m1_min);
    s["m1_complement"] = ids(step.m1_complement);
    j["steps"].push_back(std::move(s));
  }
  return dump(j);
}

TruthTable tt_from_text(const std::string& text) {
  std::string trimmed = text;
  if (!trimmed.empty() && trimmed.front() == '{') {
    return guarded([&]() -> TruthTable {
      ordered_json j = parse_json(trimmed);
      if (!j.contains("values") || !j["values"].is_string())
        throw error(errc::parse_error, "truth table JSON needs a 'values' string");
      TruthTable tt = TruthTable::parse(j["values"].get<std::string>());
      if (j.contains("n") && j["n"].get<int>() != tt.arity)
        throw error(errc::bad_length, "declared arity disagrees with the value string length");
      return tt;
    });
  }
  std::istringstream in(trimmed);
  std::string line, values;
  int declared = -1;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.starts_with("n=")) {
      declared = parse_spec_int(line.substr(2));
      continue;
    }
    if (!values.empty()) throw error(errc::parse_error, "unexpected extra line in truth table");
    values = line;
  }
  TruthTable tt = TruthTable::parse(values);
  if (declared >= 0 && declared != tt.arity)
    throw error(errc::bad_length, "declared arity disagrees with the value string length");
  return tt;
}

std::string tt_to_text(const TruthTable& tt) {
  return "n=" + std::to_string(tt.arity) + "\n" + tt.values + "\n";
}

MvTable mv_from_json(const std::string& text) {
  return guarded([&]() -> MvTable {
    ordered_json j = parse_json(text);
    MvTable table;
    table.q = require_int(j, "q");
    table.n = require_int(j, "n");
    if (!j.contains("values") || !j["values"].is_array())
      throw error(errc::parse_error, "mv table needs a 'values' array");
    for (const auto& v : j["values"]) table.values.push_back(v.get<int>());
    return table;
  });
}

std::string mv_to_json(const MvTable& table) {
  ordered_json j;
  j["q"] = table.q;
  j["n"] = table.n;
  j["values"] = ordered_json(table.values);
  return dump(j);
}

FormulaFile formula_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  FormulaFile file;
  bool header_seen = false;
  std::string sexpr;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.starts_with("q=")) {
      std::istringstream header(line);
      std::string tok;
      while (header >> tok) {
        if (tok.starts_with("q="))
          file.env.q = parse_spec_int(tok.substr(2));
        else if (tok.starts_with("n="))
          file.env.arity = parse_spec_int(tok.substr(2));
        else
          throw error(errc::parse_error, "unknown header token '" + tok + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.starts_with("unary ")) {
      std::istringstream decl(line.substr(6));
      std::string name;
      decl >> name;
      std::vector<int> table;
      int v;
      while (decl >> v) table.push_back(v);
      if (name.empty() || table.empty())
        throw error(errc::parse_error, "bad unary declaration '" + line + "'");
      file.env.unaries[name] = std::move(table);
      continue;
    }
    if (!sexpr.empty()) throw error(errc::parse_error, "unexpected extra formula line");
    sexpr = line;
  }
  if (!header_seen) throw error(errc::parse_error, "formula file is missing its 'q= n=' header");
  if (sexpr.empty()) throw error(errc::parse_error, "formula file has no formula");
  file.formula = parse_formula(sexpr);
  return file;
}

std::string formula_to_text(const Formula& f, const FormulaEnv& env) {
  std::string out = "q=" + std::to_string(env.q) + " n=" + std::to_string(env.arity) + "\n";
  for (const std::string& name : f.unary_names()) {
    auto it = env.unaries.find(name);
    if (it == env.unaries.end())
      throw error(errc::unbound_unary, "unary '" + name + "' has no table to serialise");
    out += "unary " + name;
    for (int v : it->second) out += " " + std::to_string(v);
    out += "\n";
  }
  return out + print_formula(f) + "\n";
}

std::string axiom_report_to_json(const AxiomReport& report, const std::string& algebra_name) {
  ordered_json j;
  j["algebra"] = algebra_name;
  j["system"] = axiom_system_name(report.system);
  j["all_passed"] = report.all_passed();
  j["checks"] = ordered_json::array();
  for (const AxiomCheck& c : report.checks) {
    ordered_json check;
    check["axiom"] = c.axiom;
    check["passed"] = c.passed;
    if (!c.note.empty()) check["note"] = c.note;
    if (!c.counterexample.empty()) check["counterexample"] = ordered_json(c.counterexample);
    j["checks"].push_back(std::move(check));
  }
  return dump(j);
}

std::string form_check_to_json(const FormCheck& check) {
  ordered_json j;
  j["passed"] = check.passed;
  j["recomposes"] = check.recomposes;
  j["parts_monotone"] = check.parts_monotone;
  j["bound_ok"] = check.bound_ok;
  if (check.mismatch_element) j["mismatch_element"] = *check.mismatch_element;
  if (check.bad_part) j["bad_part"] = *check.bad_part;
  if (check.bad_part_witness)
    j["bad_part_witness"] =
        ordered_json::array({check.bad_part_witness->first, check.bad_part_witness->second});
  if (!check.notes.empty()) j["notes"] = ordered_json(check.notes);
  return dump(j);
}

}  // namespace monoforms::io
