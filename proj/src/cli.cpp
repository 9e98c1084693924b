#include "abssep/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "abssep/error.hpp"
#include "abssep/fixtures.hpp"
#include "abssep/matricization.hpp"
#include "abssep/oracle.hpp"
#include "abssep/report_json.hpp"

namespace abssep {

using nlohmann::json;

namespace {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Tolerances tolerances_of(const RunConfig& config) {
  Tolerances tol;
  tol.psd_abs = config.tol_abs;
  tol.psd_rel = config.tol;
  tol.validate();
  return tol;
}

ClassifyOptions options_of(const RunConfig& config) {
  ClassifyOptions options;
  options.tol = tolerances_of(config);
  return options;
}

Spectrum spectrum_from_json(const json& j, double sum_tol) {
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const auto values = j.at("eigenvalues").get<std::vector<double>>();
  const bool normalize = j.value("normalize", false);
  return make_spectrum(Dims(m, n), values, sum_tol, normalize);
}

Spectrum load_spectrum(const RunConfig& config) {
  const bool inline_given = config.m || config.n || config.eigenvalues;
  if (config.input && inline_given) {
    throw ValidationError("give either --input or --m/--n/--eigenvalues, not both");
  }
  if (config.input) {
    std::ifstream in(*config.input);
    if (!in) throw ValidationError("cannot open " + *config.input);
    const json j = json::parse(in);
    return spectrum_from_json(j, config.sum_tol);
  }
  if (!config.m || !config.n || !config.eigenvalues) {
    throw ValidationError("a spectrum needs --m, --n and --eigenvalues (or --input)");
  }
  return make_spectrum(Dims(*config.m, *config.n), *config.eigenvalues, config.sum_tol,
                       config.normalize);
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        failures[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& field) {
  const std::string t = trim(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw ValidationError("not a number: '" + t + "'");
  return v;
}

int parse_int(const std::string& field) {
  const double v = parse_double(field);
  if (v != static_cast<double>(static_cast<int>(v))) {
    throw ValidationError("not an integer: '" + trim(field) + "'");
  }
  return static_cast<int>(v);
}

Spectrum spectrum_from_line(const std::string& line, double sum_tol) {
  if (line.front() == '{') return spectrum_from_json(json::parse(line), sum_tol);
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
  if (fields.size() < 2) throw ValidationError("expected m,n,v1,...");
  const int m = parse_int(fields[0]);
  const int n = parse_int(fields[1]);
  std::vector<double> values;
  for (std::size_t i = 2; i < fields.size(); ++i) values.push_back(parse_double(fields[i]));
  return make_spectrum(Dims(m, n), values, sum_tol);
}

const std::vector<VerdictKind>& all_kinds() {
  static const std::vector<VerdictKind> kinds{
      VerdictKind::AbsolutelyPptExact, VerdictKind::AbsolutelyPptSufficient,
      VerdictKind::NotAbsolutelyPpt, VerdictKind::Indeterminate};
  return kinds;
}

std::string error_code_of(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return to_string(err->code());
  return "ValidationError";
}

/// Maps exceptions thrown by a subcommand body to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InternalInconsistency ? kExitInternal : kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: invalid JSON input: " << e.what() << "\n";
    return kExitValidation;
  }
}

std::string symbolic_index(int signed_index, int p, int total) {
  if (signed_index < 0) return std::to_string(signed_index);
  const int offset = total - signed_index;
  std::string base = std::to_string(p) + "n";
  return offset == 0 ? base : base + "-" + std::to_string(offset);
}

std::string pair_label(const IndexPair& pair) {
  return std::to_string(pair.k) + "," + std::to_string(pair.l);
}

}  // namespace

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Spectrum s = load_spectrum(config);
    out << to_json(classify(s, options_of(config))).dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.input) throw ValidationError("batch needs --input");
    std::ifstream in(*config.input);
    if (!in) throw ValidationError("cannot open " + *config.input);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
      line = trim(line);
      if (!line.empty()) lines.push_back(line);
    }
    const auto options = options_of(config);
    std::vector<json> records(lines.size());
    std::vector<int> kinds(lines.size(), -1);
    parallel_for(static_cast<int>(lines.size()), config.threads, [&](int i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        const Report report = classify(spectrum_from_line(lines[idx], config.sum_tol), options);
        records[idx] = to_json(report);
        kinds[idx] = static_cast<int>(report.verdict.kind);
      } catch (const std::exception& e) {
        records[idx] = {{"line", i + 1}, {"error", e.what()}, {"code", error_code_of(e)}};
      }
    });

    std::map<std::string, int> counts;
    for (auto kind : all_kinds()) counts[to_string(kind)] = 0;
    int errors = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      out << records[i].dump() << "\n";
      if (kinds[i] < 0) {
        ++errors;
      } else {
        ++counts[to_string(static_cast<VerdictKind>(kinds[i]))];
      }
    }
    json summary = {{"total", records.size()}, {"errors", errors}, {"verdicts", counts}};
    out << json{{"summary", summary}}.dump() << "\n";
    const bool any_ok = errors < static_cast<int>(records.size());
    return records.empty() || any_ok ? kExitOk : kExitValidation;
  });
}

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.m || !config.n) throw ValidationError("sample needs --m and --n");
    if (config.count < 1) throw ValidationError("--count must be at least 1");
    const Dims dims(*config.m, *config.n);
    const auto options = options_of(config);
    std::vector<Report> reports(static_cast<std::size_t>(config.count));
    parallel_for(config.count, config.threads, [&](int i) {
      reports[static_cast<std::size_t>(i)] =
          classify(sample_spectrum(dims, config.seed, static_cast<std::uint64_t>(i)), options);
    });

    std::map<std::string, int> verdicts;
    for (auto kind : all_kinds()) verdicts[to_string(kind)] = 0;
    std::map<std::string, int> fired;
    const auto tally = [&](const CriterionOutcome& o) {
      fired.try_emplace(o.name, 0);
      if (o.fired) ++fired[o.name];
    };
    for (const auto& r : reports) {
      ++verdicts[to_string(r.verdict.kind)];
      for (const auto& o : r.criteria) tally(o);
      tally(r.diagnostics.jivulescu_sum3);
      tally(r.diagnostics.ratio_bound);
      tally(r.diagnostics.purity_lower);
      tally(r.diagnostics.purity_upper);
      if (r.diagnostics.qubit_remark) tally(*r.diagnostics.qubit_remark);
      if (r.diagnostics.sampled_necessity) tally(*r.diagnostics.sampled_necessity);
    }
    const double total = config.count;
    json j_verdicts = json::object();
    for (const auto& [name, c] : verdicts) j_verdicts[name] = {{"count", c}, {"fraction", c / total}};
    json j_fired = json::object();
    for (const auto& [name, c] : fired) j_fired[name] = {{"count", c}, {"fraction", c / total}};
    json result = {{"dims", {{"m", dims.m()}, {"n", dims.n()}, {"swapped", dims.swapped()}}},
                   {"count", config.count},
                   {"seed", config.seed},
                   {"verdicts", j_verdicts},
                   {"criteria_fired", j_fired}};
    out << result.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_orderings(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.p) throw ValidationError("orderings needs --p");
    const int p = *config.p;
    if (p < 2) throw ValidationError("--p must be at least 2");
    std::vector<OrderingPair> pairs;
    std::string source = "canonical";
    if (p <= 4) {
      pairs = canonical_pairs(p);
    } else {
      if (!config.samples) throw ValidationError("--p >= 5 needs --samples");
      pairs = sample_pairs(p, config.seed, *config.samples);
      source = "sampled";
    }
    // Any total works for the grid; it is printed relative to p*n.
    const int total = p * 1000;
    json templates = json::array();
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      json grid = json::array();
      for (int r = 0; r < p; ++r) {
        json row = json::array();
        for (int c = 0; c < p; ++c)
          row.push_back(symbolic_index(lambda_hat_index(pairs[t], r, c, total), p, total));
        grid.push_back(row);
      }
      json plus = json::array();
      for (const auto& pair : pairs[t].plus_sequence()) plus.push_back(pair_label(pair));
      json minus = json::array();
      for (const auto& pair : pairs[t].minus_sequence()) minus.push_back(pair_label(pair));
      templates.push_back({{"index", t + 1},
                           {"grid", grid},
                           {"sigma_plus_order", plus},
                           {"sigma_minus_order", minus}});
    }
    json result = {{"p", p}, {"source", source}, {"count", pairs.size()}, {"templates", templates}};
    if (source == "sampled") {
      result["seed"] = config.seed;
      result["samples"] = *config.samples;
    }
    out << result.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_examples(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.list) {
      for (const auto& f : worked_examples()) {
        out << f.name << " (" << f.m << "x" << f.n << "): " << f.description << "\n";
        out << "  eigenvalues:";
        for (double v : f.eigenvalues) out << " " << v;
        out << "\n  verdict: " << to_string(f.verdict) << " by " << f.verdict_by << "\n";
        for (const auto& mat : f.matrices) {
          out << "  L" << mat.index << " eigenvalues:";
          for (double v : mat.eigenvalues) out << " " << v;
          out << "\n";
        }
        for (const auto& margin : f.margins)
          out << "  " << margin.criterion << " margin: " << margin.value << "\n";
        if (f.shortcut_condition != 0)
          out << "  shortcut condition: " << f.shortcut_condition << "\n";
      }
      return kExitOk;
    }
    const double eigen_tol = config.golden_tol.value_or(kFixtureEigenTolerance);
    const double margin_tol = config.golden_tol.value_or(kFixtureMarginTolerance);
    int passed = 0;
    int total = 0;
    out << std::setprecision(6);
    for (const auto& f : worked_examples()) {
      for (const auto& c : check_fixture(f, eigen_tol, margin_tol)) {
        ++total;
        if (c.passed) ++passed;
        out << (c.passed ? "PASS " : "FAIL ") << c.fixture << ": " << c.assertion << " (expected "
            << c.expected << ", got " << c.actual << ")\n";
      }
    }
    out << passed << "/" << total << " assertions passed across " << worked_examples().size()
        << " fixtures\n";
    return passed == total ? kExitOk : kExitGoldenFailure;
  });
}

int cmd_oracle(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Spectrum s = load_spectrum(config);
    const auto tol = tolerances_of(config);
    if (config.trials < 0) throw ValidationError("--trials must be nonnegative");
    const auto falsifier = random_unitary_falsifier(s, config.trials, config.seed, tol);
    json result = {
        {"dims", {{"m", s.dims().m()}, {"n", s.dims().n()}, {"swapped", s.dims().swapped()}}},
        {"trials", config.trials},
        {"seed", config.seed},
        {"falsifier", to_json(falsifier)}};
    if (s.dims().p() <= 4) {
      const auto witness = x_witness(s, tol);
      result["x_witness"] = witness ? to_json(*witness) : json(nullptr);
    } else {
      result["x_witness"] = nullptr;
      result["x_witness_note"] = "needs p <= 4";
    }
    out << result.dump(2) << "\n";
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral tests for absolute PPT / absolute separability"};
  app.require_subcommand(1);
  RunConfig config;

  int m = 0;
  int n = 0;
  std::vector<double> eigenvalues;
  std::string input;
  int p = 0;
  int samples = 0;
  double golden_tol = 0.0;
  std::string output;

  const auto add_spectrum = [&](CLI::App* sub) {
    sub->add_option("--m", m, "first subsystem dimension");
    sub->add_option("--n", n, "second subsystem dimension");
    sub->add_option("--eigenvalues", eigenvalues, "comma-separated eigenvalues")->delimiter(',');
    sub->add_option("--input", input, "JSON file {m, n, eigenvalues, normalize?}");
    sub->add_flag("--normalize", config.normalize, "divide by the sum before validating");
  };
  const auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--sum-tol", config.sum_tol, "allowed |sum - 1|");
    sub->add_option("--tol", config.tol, "relative PSD tolerance");
    sub->add_option("--tol-abs", config.tol_abs, "absolute PSD tolerance");
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "write to this file instead of stdout");
    sub->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify one spectrum");
  add_spectrum(classify_cmd);
  add_tolerances(classify_cmd);
  add_common(classify_cmd);

  auto* batch_cmd = app.add_subcommand("batch", "classify a CSV or JSON-lines file");
  batch_cmd->add_option("--input", input, "one spectrum per line")->required();
  add_tolerances(batch_cmd);
  add_common(batch_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "survey random spectra");
  sample_cmd->add_option("--m", m)->required();
  sample_cmd->add_option("--n", n)->required();
  sample_cmd->add_option("--count", config.count);
  sample_cmd->add_option("--seed", config.seed);
  sample_cmd->add_option("--tol", config.tol, "relative PSD tolerance");
  sample_cmd->add_option("--tol-abs", config.tol_abs, "absolute PSD tolerance");
  add_common(sample_cmd);

  auto* orderings_cmd = app.add_subcommand("orderings", "dump ordering-pair templates");
  orderings_cmd->add_option("--p", p)->required();
  orderings_cmd->add_option("--samples", samples, "random vectors to draw for p >= 5");
  orderings_cmd->add_option("--seed", config.seed);
  add_common(orderings_cmd);

  auto* examples_cmd = app.add_subcommand("examples", "run the worked-example fixtures");
  examples_cmd->add_option("--tol", golden_tol, "comparison tolerance");
  examples_cmd->add_flag("--list", config.list, "print fixtures without running");
  add_common(examples_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force checks on one spectrum");
  add_spectrum(oracle_cmd);
  add_tolerances(oracle_cmd);
  oracle_cmd->add_option("--trials", config.trials);
  oracle_cmd->add_option("--seed", config.seed);
  add_common(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* sub = app.get_subcommands().front();
  config.subcommand = sub->get_name();
  if (sub->get_option_no_throw("--m") && given(sub, "--m")) config.m = m;
  if (sub->get_option_no_throw("--n") && given(sub, "--n")) config.n = n;
  if (sub->get_option_no_throw("--eigenvalues") && given(sub, "--eigenvalues"))
    config.eigenvalues = eigenvalues;
  if (sub->get_option_no_throw("--input") && given(sub, "--input")) config.input = input;
  if (sub->get_option_no_throw("--p") && given(sub, "--p")) config.p = p;
  if (sub->get_option_no_throw("--samples") && given(sub, "--samples")) config.samples = samples;
  if (sub == examples_cmd && given(sub, "--tol")) config.golden_tol = golden_tol;
  if (given(sub, "--output")) config.output = output;

  std::ofstream file;
  std::ostream* target = &out;
  if (config.output) {
    file.open(*config.output);
    if (!file) {
      err << "error: cannot write " << *config.output << "\n";
      return kExitValidation;
    }
    target = &file;
  }

  static const std::map<std::string, int (*)(const RunConfig&, std::ostream&, std::ostream&)>
      commands{{"classify", cmd_classify}, {"batch", cmd_batch},       {"sample", cmd_sample},
               {"orderings", cmd_orderings}, {"examples", cmd_examples}, {"oracle", cmd_oracle}};
  return commands.at(config.subcommand)(config, *target, err);
}

}  // namespace abssep
