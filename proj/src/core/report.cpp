#include "configset/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "configset/error.hpp"

namespace configset {

namespace {

using json = nlohmann::ordered_json;

class Stopwatch {
 public:
  explicit Stopwatch(json& timing) : timing_(timing), start_(Clock::now()), lap_(start_) {}

  void lap(const std::string& stage) {
    auto now = Clock::now();
    timing_[stage + "_ms"] = std::chrono::duration<double, std::milli>(now - lap_).count();
    lap_ = now;
  }
  void finish() { timing_["total_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start_).count(); }

 private:
  using Clock = std::chrono::steady_clock;
  json& timing_;
  Clock::time_point start_;
  Clock::time_point lap_;
};

json rationals(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(format_rational(v));
  return out;
}

json integers(const std::vector<Integer>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(format_integer(v));
  return out;
}

json tuples(const std::vector<Configuration>& configs) {
  json out = json::array();
  for (const auto& c : configs) out.push_back(c);
  return out;
}

json exactness_json(const Exactness& e) {
  json out;
  out["status"] = exactness_name(e.status);
  if (e.status == Exactness::Status::exact) {
    out["radius"] = nullptr;
  } else {
    out["radius"] = e.radius;
  }
  return out;
}

json input_json(const ConfigurationPair& pair, Mode mode) {
  const Semigroup& s = *pair.handle.structure;
  json out;
  out["structure"] = s.describe();
  out["kind"] = structure_kind_name(s.kind());
  json gens = json::array();
  for (const auto& g : pair.handle.generators) gens.push_back(s.format(g));
  out["generators"] = gens;
  out["partition"] = pair.partition->describe();
  out["blocks"] = pair.partition->block_count();
  out["mode"] = mode_name(mode);
  return out;
}

json configurations_json(const ConfigurationSet& set, const ConfigurationPair& pair) {
  json out;
  out["count"] = set.size();
  out["tuple_length"] = set.tuple_length();
  out["exactness"] = exactness_json(set.exactness);
  if (set.identity_color) {
    out["identity_color"] = set.identity_color;
  } else {
    out["identity_color"] = nullptr;
  }
  out["tuples"] = tuples(set.configurations);
  json bases = json::array();
  for (const auto& c : set.configurations) {
    bases.push_back(base_point_set(c, set, pair.handle, *pair.partition).describe());
  }
  out["base_point_sets"] = bases;
  return out;
}

json equations_json(const EquationSystem& system) {
  json out;
  out["variables"] = system.variable_count();
  out["row_count"] = system.row_count();
  json rows = json::array();
  for (std::size_t r = 0; r < system.row_count(); ++r) {
    json row;
    row["color"] = system.labels()[r].color;
    row["position"] = system.labels()[r].position;
    row["coefficients"] = system.rows()[r];
    rows.push_back(row);
  }
  out["rows"] = rows;
  return out;
}

json certificate_json(const InfeasibilityCertificate& cert) {
  json out;
  out["multipliers"] = rationals(cert.multipliers);
  out["combination"] = rationals(cert.combination);
  return out;
}

json comparison_json(const ComparisonReport& report, const ConfigurationSet& a, const ConfigurationSet& b) {
  json out;
  out["verdict"] = comparison_verdict_name(report.verdict);
  out["exactness_a"] = exactness_json(a.exactness);
  out["exactness_b"] = exactness_json(b.exactness);
  out["a_minus_b"] = tuples(report.a_minus_b);
  out["b_minus_a"] = tuples(report.b_minus_a);
  return out;
}

json violations_json(const Semigroup& s, const std::vector<DecompositionViolation>& violations) {
  json out = json::array();
  for (const auto& v : violations) {
    json item;
    item["kind"] = violation_kind_name(v.kind);
    item["element"] = s.format(v.element);
    if (!v.pieces.empty()) item["pieces"] = v.pieces;
    out.push_back(item);
  }
  return out;
}

json decomposition_json(const SynthesisResult& result) {
  const auto& dec = result.decomposition;
  const Semigroup& s = *dec.handle.structure;
  json pieces = json::array();
  for (const auto& p : dec.pieces) {
    json piece;
    piece["side"] = p.side == Side::a ? "A" : "B";
    piece["translator"] = s.format(p.translator);
    json atoms = json::array();
    for (auto k : p.atoms) atoms.push_back(dec.set.configurations[k]);
    piece["atoms"] = atoms;
    pieces.push_back(piece);
  }
  json verification;
  verification["radius"] = result.verification.radius;
  verification["ball_size"] = result.verification.ball_size;
  verification["max_translator_length"] = result.verification.max_translator_length;
  verification["cover_radius"] = result.verification.radius - result.verification.max_translator_length;
  verification["interior_size"] = result.verification.interior_size;
  verification["violations"] = violations_json(s, result.verification.violations);
  json out;
  out["piece_count"] = dec.pieces.size();
  out["pieces"] = pieces;
  out["attempts"] = result.attempts;
  out["verification"] = verification;
  return out;
}

json semigroup_paradox_json(const Handle& handle, const SemigroupSearchResult& result, std::size_t radius) {
  const Semigroup& s = *handle.structure;
  json out;
  out["systems_checked"] = result.systems_checked;
  out["radius"] = radius;
  if (!result.pieces) {
    out["status"] = "none_found";
    return out;
  }
  out["status"] = "found";
  json pieces = json::array();
  for (const auto& p : *result.pieces) {
    json piece;
    piece["side"] = p.side == Side::a ? "A" : "B";
    piece["translator"] = s.format(p.translator);
    piece["blocks"] = p.set.blocks;
    pieces.push_back(piece);
  }
  out["pieces"] = pieces;
  return out;
}

json normal_json(const std::optional<NormalSubsystem>& found) {
  json out;
  out["found"] = found.has_value();
  if (!found) return out;
  out["first_row"] = found->first_row + 1;
  out["row_count"] = found->row_count;
  out["orientation"] = found->swapped ? "B=L^j, A=L^0" : "B=L^0, A=L^j";
  out["permutation"] = found->result.permutation;
  out["permutations_checked"] = found->result.permutations_checked;
  out["witness"] = found->result.witness;
  return out;
}

std::set<Analysis> closure(std::set<Analysis> requested) {
  if (requested.count(Analysis::tarski)) requested.insert(Analysis::paradox);
  if (requested.count(Analysis::paradox)) requested.insert(Analysis::solve);
  if (requested.count(Analysis::solve) || requested.count(Analysis::normal)) requested.insert(Analysis::equations);
  requested.insert(Analysis::enumerate);
  return requested;
}

EnumerationOptions enumeration_options(const ExperimentSpec& spec, const RunOptions& options) {
  EnumerationOptions out;
  out.radius = options.radius ? options.radius : spec.radius;
  out.cap = options.cap;
  return out;
}

}  // namespace

Report run(const ExperimentSpec& spec, const RunOptions& options) {
  Report report;
  Stopwatch clock(report.timing);
  const Mode mode = options.mode.value_or(spec.mode);
  const auto analyses = closure(options.analyses.value_or(spec.analyses));
  const std::size_t verify_radius = options.verify_radius.value_or(spec.verify_radius);
  const ConfigurationPair& pair = spec.pair;
  const auto eo = enumeration_options(spec, options);

  json& body = report.body;
  body["input"] = input_json(pair, mode);
  if (eo.radius) {
    body["input"]["witness_radius"] = *eo.radius;
  } else {
    body["input"]["witness_radius"] = nullptr;
  }
  body["input"]["verify_radius"] = verify_radius;
  json requested = json::array();
  for (auto a : analyses) requested.push_back(analysis_name(a));
  body["input"]["analyses"] = requested;

  const ConfigurationSet set = enumerate(pair.handle, *pair.partition, mode, eo);
  body["configurations"] = configurations_json(set, pair);
  clock.lap("enumerate");

  std::optional<EquationSystem> system;
  if (analyses.count(Analysis::equations)) {
    system = build_equations(set);
    body["equations"] = equations_json(*system);
    clock.lap("equations");
  }

  bool feasible = false;
  if (analyses.count(Analysis::solve)) {
    const auto matrix = to_matrix(*system);
    const auto normalized = solve_normalized(*system);
    const auto nonzero = solve_nonzero_nonnegative(*system);
    feasible = normalized.feasible;
    json out;
    out["verdict"] = normalized.feasible ? "normalized_solution" : "infeasible";
    if (normalized.feasible) {
      json solution = json::array();
      for (std::size_t k = 0; k < set.size(); ++k) {
        solution.push_back({{"configuration", set.configurations[k]}, {"value", format_rational(normalized.solution[k])}});
      }
      out["solution"] = solution;
      out["verified"] = verify_solution(matrix, normalized.solution);
    } else {
      out["certificate"] = certificate_json(*normalized.certificate);
      out["verified"] = verify_certificate(matrix, system->variable_count(), *normalized.certificate);
    }
    out["nonzero_nonnegative"] = nonzero.feasible ? "feasible" : "infeasible";
    out["solvers_agree"] = nonzero.feasible == normalized.feasible;
    body["feasibility"] = out;
    clock.lap("solve");
  }

  std::optional<ParadoxicalCondition> condition;
  if (analyses.count(Analysis::paradox)) {
    json out;
    if (feasible) {
      out["status"] = "not_applicable";
      out["reason"] = "the equations have a normalized solution";
    } else if (mode == Mode::semigroup_left) {
      out["status"] = "semigroup_search";
      out["semigroup"] = semigroup_paradox_json(
          pair.handle, search_semigroup_paradox(pair.handle, *pair.partition, verify_radius), verify_radius);
    } else {
      const auto reduction = nonnegative_row_reduction(*system);
      json red;
      red["row"] = integers(reduction.row);
      red["multipliers"] = rationals(reduction.multipliers);
      out["row_reduction"] = red;

      condition = check_paradoxical_condition(*system, {reduction.row}, options.condition_cap);
      json cond;
      cond["status"] = condition->status == ConditionStatus::certificate ? "certificate" : "not_found";
      cond["source"] = condition->from_given_rows ? "row_reduction" : "structured_search";
      cond["form"] = "sum_i (L^{j_i}_i - L^{k_i}_i)";
      cond["note"] = "per-color terms of the form L, -L or L - L are not checked separately";
      json rows = json::array();
      for (const auto& r : condition->rows) {
        json row;
        row["row"] = integers(r.row);
        json idx = json::array();
        for (const auto& [j, k] : r.indices) idx.push_back({j, k});
        row["indices"] = idx;
        rows.push_back(row);
      }
      cond["rows"] = rows;
      out["condition"] = cond;
      clock.lap("condition");

      SynthesisOptions so = options.synthesis;
      so.radius = verify_radius;
      so.ball_cap = options.cap;
      const auto result = synthesize_decomposition(
          pair.handle, *pair.partition, set,
          condition->status == ConditionStatus::certificate ? &*condition : nullptr, so);
      out["status"] = "decomposition";
      out["decomposition"] = decomposition_json(result);
      clock.lap("synthesis");
    }
    body["paradox"] = out;
  }

  if (analyses.count(Analysis::tarski)) {
    json out;
    if (condition && condition->status == ConditionStatus::certificate) {
      out["status"] = "bound";
      out["l"] = set.size();
      out["bound"] = format_integer(tarski_upper_bound(set.size()));
    } else {
      out["status"] = "not_applicable";
    }
    body["tarski"] = out;
  }

  if (analyses.count(Analysis::normal)) {
    json out;
    const PiConvention other =
        options.pi_convention == PiConvention::compose ? PiConvention::one_line : PiConvention::compose;
    out["convention"] = pi_convention_name(options.pi_convention);
    out["result"] = normal_json(search_normal_subsystems(*system, options.pi_convention));
    out["alternative_convention"] = pi_convention_name(other);
    out["alternative_result"] = normal_json(search_normal_subsystems(*system, other));
    body["normal"] = out;
    clock.lap("normal");
  }

  if (analyses.count(Analysis::compare)) {
    const ConfigurationPair& other = spec.compare_pair ? *spec.compare_pair : pair;
    const ConfigurationSet other_set = enumerate(other.handle, *other.partition, mode, eo);
    json out = comparison_json(compare(set, other_set), set, other_set);
    out["other"] = input_json(other, mode);
    body["compare"] = out;
    clock.lap("compare");
  }

  clock.finish();
  return report;
}

Report compare_command(const ExperimentSpec& a, const ExperimentSpec& b, const RunOptions& options) {
  Report report;
  Stopwatch clock(report.timing);
  const Mode mode_a = options.mode.value_or(a.mode);
  const Mode mode_b = options.mode.value_or(b.mode);
  const auto set_a = enumerate(a.pair.handle, *a.pair.partition, mode_a, enumeration_options(a, options));
  const auto set_b = enumerate(b.pair.handle, *b.pair.partition, mode_b, enumeration_options(b, options));
  clock.lap("enumerate");
  const auto cmp = compare(set_a, set_b);
  report.body["input_a"] = input_json(a.pair, mode_a);
  report.body["input_b"] = input_json(b.pair, mode_b);
  report.body["compare"] = comparison_json(cmp, set_a, set_b);
  clock.finish();
  return report;
}

std::string canonical_json(const Report& report, int indent) {
  return json{{"report", report.body}}.dump(indent);
}

std::string full_json(const Report& report, int indent) {
  json out;
  out["report"] = report.body;
  out["timing"] = report.timing;
  return out.dump(indent);
}

namespace {

bool scalar_array(const json& value) {
  if (!value.is_array()) return false;
  for (const auto& v : value) {
    if (v.is_object()) return false;
    if (v.is_string() && v.get<std::string>().find(' ') != std::string::npos) return false;
    if (v.is_array() && !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) return false;
  }
  return true;
}

std::string inline_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out = "[";
    for (std::size_t k = 0; k < value.size(); ++k) out += (k ? " " : "") + inline_text(value[k]);
    return out + "]";
  }
  return value.dump();
}

void render(std::ostringstream& out, const json& value, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& [key, v] : value.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      render(out, v, depth + 1);
    } else if (v.is_array() && !scalar_array(v)) {
      out << pad << key << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(out, item, depth + 2);
        } else {
          out << pad << "  - " << inline_text(item) << "\n";
        }
      }
    } else {
      out << pad << key << ": " << inline_text(v) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  render(out, report.body, 0);
  return out.str();
}

}  // namespace configset
