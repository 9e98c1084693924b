#include "abssep/report_json.hpp"

#include <cmath>

#include "abssep/error.hpp"

namespace abssep {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

json number_map(const std::map<std::string, double>& values) {
  json out = json::object();
  for (const auto& [key, value] : values) out[key] = number(value);
  return out;
}

std::map<std::string, double> read_number_map(const json& j) {
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items()) out[key] = read_number(value);
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::OutOfRange, std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace

json to_json(const CriterionOutcome& o) {
  json j = {{"name", o.name},
            {"fired", o.fired},
            {"margin", number(o.margin)},
            {"applicable", o.applicable},
            {"detail", number_map(o.detail)}};
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

CriterionOutcome outcome_from_json(const json& j) {
  return guarded([&] {
    CriterionOutcome o;
    o.name = j.at("name").get<std::string>();
    o.fired = j.at("fired").get<bool>();
    o.margin = read_number(j.at("margin"));
    o.applicable = j.value("applicable", true);
    if (j.contains("detail")) o.detail = read_number_map(j.at("detail"));
    o.note = j.value("note", std::string());
    return o;
  });
}

json to_json(const Report& r) {
  json criteria = json::array();
  for (const auto& o : r.criteria) criteria.push_back(to_json(o));
  const auto& d = r.diagnostics;
  json diagnostics = {{"purity", number(d.purity)},
                      {"gurvits_ball", to_json(d.gurvits_ball)},
                      {"jivulescu_sum3", to_json(d.jivulescu_sum3)},
                      {"ratio_bound", to_json(d.ratio_bound)},
                      {"purity_lower", to_json(d.purity_lower)},
                      {"purity_upper", to_json(d.purity_upper)}};
  if (d.qubit_remark) diagnostics["qubit_remark"] = to_json(*d.qubit_remark);
  if (d.sampled_necessity) diagnostics["sampled_necessity"] = to_json(*d.sampled_necessity);
  return {{"dims", {{"m", r.m}, {"n", r.n}, {"swapped", r.swapped}}},
          {"spectrum", r.spectrum},
          {"verdict",
           {{"kind", to_string(r.verdict.kind)},
            {"by", r.verdict.by},
            {"witness", number_map(r.verdict.witness)}}},
          {"criteria", criteria},
          {"diagnostics", diagnostics}};
}

Report report_from_json(const json& j) {
  return guarded([&] {
    Report r;
    const auto& dims = j.at("dims");
    r.m = dims.at("m").get<int>();
    r.n = dims.at("n").get<int>();
    r.swapped = dims.at("swapped").get<bool>();
    r.spectrum = j.at("spectrum").get<std::vector<double>>();
    const auto& v = j.at("verdict");
    const auto kind = verdict_kind_from_string(v.at("kind").get<std::string>());
    if (!kind) throw Error(Errc::OutOfRange, "unknown verdict kind");
    r.verdict.kind = *kind;
    r.verdict.by = v.at("by").get<std::string>();
    r.verdict.witness = read_number_map(v.at("witness"));
    for (const auto& o : j.at("criteria")) r.criteria.push_back(outcome_from_json(o));
    const auto& d = j.at("diagnostics");
    auto& diag = r.diagnostics;
    diag.purity = read_number(d.at("purity"));
    diag.gurvits_ball = outcome_from_json(d.at("gurvits_ball"));
    diag.jivulescu_sum3 = outcome_from_json(d.at("jivulescu_sum3"));
    diag.ratio_bound = outcome_from_json(d.at("ratio_bound"));
    diag.purity_lower = outcome_from_json(d.at("purity_lower"));
    diag.purity_upper = outcome_from_json(d.at("purity_upper"));
    if (d.contains("qubit_remark")) diag.qubit_remark = outcome_from_json(d.at("qubit_remark"));
    if (d.contains("sampled_necessity"))
      diag.sampled_necessity = outcome_from_json(d.at("sampled_necessity"));
    return r;
  });
}

json to_json(const FalsifierResult& result) {
  json j = {{"trials_run", result.trials_run},
            {"smallest_pt_eigenvalue", number(result.smallest_pt_eigenvalue)}};
  if (result.witness) {
    j["witness"] = {{"trial", result.witness->trial},
                    {"min_pt_eigenvalue", result.witness->min_pt_eigenvalue}};
  } else {
    j["witness"] = nullptr;
    j["note"] = "no violation found in " + std::to_string(result.trials_run) + " trials";
  }
  return j;
}

json to_json(const XWitness& w) {
  return {{"matrix_index", w.matrix_index},
          {"min_eigenvalue", w.min_eigenvalue},
          {"eigenvector", w.eigenvector},
          {"x", w.x},
          {"quadratic_value", w.quadratic_value},
          {"compatible_with_matrix", w.compatible_with_matrix},
          {"compatible_quadratic_value", w.compatible_quadratic_value}};
}

}  // namespace abssep
