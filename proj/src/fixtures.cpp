#include "abssep/fixtures.hpp"

#include <cmath>

#include "abssep/error.hpp"
#include "abssep/linalg.hpp"
#include "abssep/matricization.hpp"

namespace abssep {

Spectrum WorkedExample::spectrum() const {
  return make_spectrum(Dims(m, n), eigenvalues, sum_tolerance);
}

namespace {

std::vector<double> repeat(double v, int count) {
  return std::vector<double>(static_cast<std::size_t>(count), v);
}

std::vector<double> concat(std::initializer_list<std::vector<double>> parts) {
  std::vector<double> out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<WorkedExample> build_fixtures() {
  std::vector<WorkedExample> out;

  WorkedExample qutrit;
  qutrit.name = "qutrit-abs-ppt";
  qutrit.description = "3x3 spectrum satisfying the sum condition";
  qutrit.m = 3;
  qutrit.n = 3;
  qutrit.eigenvalues = concat({repeat(0.1336, 2), repeat(0.1111, 4), repeat(0.0961, 3)});
  qutrit.verdict = VerdictKind::AbsolutelyPptExact;
  qutrit.verdict_by = criterion::kExactQutrit;
  // The printed column-major matrix has the first list; the row-major one the second.
  qutrit.matrices = {
      {1, {0.1510, 0.2122, 0.2435},
       {0.1922, -0.0375, -0.0225, -0.0375, 0.1922, 0.0, -0.0225, 0.0, 0.2222}},
      {2, {0.1521, 0.2222, 0.2623}, {}},
  };
  qutrit.margins = {{criterion::kSufficientSum, 0.2883 - 0.2672}};
  out.push_back(qutrit);

  WorkedExample qutrit_no;
  qutrit_no.name = "qutrit-not-abs-ppt";
  qutrit_no.description = "3x3 spectrum violating the last-row dominance";
  qutrit_no.m = 3;
  qutrit_no.n = 3;
  qutrit_no.eigenvalues = {0.6412, 0.0923, 0.0905, 0.0436, 0.0430, 0.0311, 0.0228, 0.0185, 0.0171};
  qutrit_no.verdict = VerdictKind::NotAbsolutelyPpt;
  qutrit_no.verdict_by = criterion::kNotAbsGeneral;
  qutrit_no.matrices = {
      {1, {-0.5916, 0.0957, 0.6627}, {}},
      {2, {-0.5849, 0.0970, 0.6714}, {}},
  };
  qutrit_no.margins = {{criterion::kNotAbsGeneral, 0.1828 - 0.1613}};
  out.push_back(qutrit_no);

  WorkedExample ququart;
  ququart.name = "ququart-abs-ppt";
  ququart.description = "4x4 spectrum with a twelve-fold degenerate bulk";
  ququart.m = 4;
  ququart.n = 4;
  ququart.eigenvalues = concat({repeat(0.0775, 2), repeat(0.0625, 12), repeat(0.0475, 2)});
  ququart.verdict = VerdictKind::AbsolutelyPptExact;
  ququart.verdict_by = criterion::kExactQuquart;
  ququart.matrices = {
      {1, {0.0733, 0.1250, 0.1250, 0.1467},
       {0.0950, -0.0300, -0.0150, 0.0, -0.0300, 0.1250, 0.0, 0.0, -0.0150, 0.0, 0.1250, 0.0, 0.0,
        0.0, 0.0, 0.1250}},
  };
  ququart.margins = {{criterion::kSufficientSum, 0.2200 - 0.2175}};
  ququart.shortcut_condition = 3;
  out.push_back(ququart);

  WorkedExample ququart_no;
  ququart_no.name = "ququart-not-abs-ppt";
  ququart_no.description = "4x4 spectrum violating the ququart row inequality";
  ququart_no.m = 4;
  ququart_no.n = 4;
  ququart_no.eigenvalues = concat({{0.4894, 0.0897, 0.0812, 0.0653, 0.0459, 0.0449, 0.0432, 0.0220},
                                   repeat(0.0168, 6),
                                   {0.0154, 0.0026}});
  ququart_no.verdict = VerdictKind::NotAbsolutelyPpt;
  ququart_no.verdict_by = criterion::kNotAbsQuquart;
  ququart_no.matrices = {{1, {-0.4781, 0.0447, 0.0965, 0.4955}, {}}};
  ququart_no.margins = {{criterion::kNotAbsQuquart, 0.0300}};
  out.push_back(ququart_no);

  return out;
}

const CriterionOutcome* find_outcome(const Report& report, const std::string& name) {
  for (const auto& o : report.criteria)
    if (o.name == name) return &o;
  return nullptr;
}

}  // namespace

const std::vector<WorkedExample>& worked_examples() {
  static const std::vector<WorkedExample> fixtures = build_fixtures();
  return fixtures;
}

const WorkedExample& worked_example(const std::string& name) {
  for (const auto& f : worked_examples())
    if (f.name == name) return f;
  throw Error(Errc::OutOfRange, "no fixture named " + name);
}

std::vector<FixtureCheck> check_fixture(const WorkedExample& fixture, double eigen_tol,
                                        double margin_tol) {
  std::vector<FixtureCheck> checks;
  const auto add = [&](std::string assertion, double expected, double actual, double tol) {
    checks.push_back({fixture.name, std::move(assertion), expected, actual,
                      std::abs(expected - actual) <= tol});
  };

  const Spectrum s = fixture.spectrum();
  const auto pairs = canonical_pairs(s.dims().p());
  for (const auto& expected : fixture.matrices) {
    const auto matrix = build_lambda_sym(s, pairs.at(static_cast<std::size_t>(expected.index - 1)));
    const auto eig = sym_eigenvalues(matrix).eigenvalues;
    const std::string label = "L" + std::to_string(expected.index);
    for (std::size_t i = 0; i < expected.eigenvalues.size(); ++i) {
      add(label + " eigenvalue " + std::to_string(i + 1), expected.eigenvalues[i], eig.at(i),
          eigen_tol);
    }
    const int p = matrix.size();
    for (std::size_t e = 0; e < expected.entries.size(); ++e) {
      const int r = static_cast<int>(e) / p;
      const int c = static_cast<int>(e) % p;
      add(label + " entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")",
          expected.entries[e], matrix(r, c), eigen_tol);
    }
  }

  const Report report = classify(s);
  checks.push_back({fixture.name, std::string("verdict ") + to_string(fixture.verdict),
                    static_cast<double>(fixture.verdict), static_cast<double>(report.verdict.kind),
                    report.verdict.kind == fixture.verdict});
  checks.push_back({fixture.name, "verdict by " + fixture.verdict_by, 0.0, 0.0,
                    report.verdict.by == fixture.verdict_by});
  for (const auto& margin : fixture.margins) {
    const auto* outcome = find_outcome(report, margin.criterion);
    add(margin.criterion + " margin", margin.value, outcome ? outcome->margin : NAN, margin_tol);
    checks.push_back({fixture.name, margin.criterion + " fired", 1.0,
                      outcome && outcome->fired ? 1.0 : 0.0, outcome && outcome->fired});
  }
  if (fixture.shortcut_condition != 0) {
    const auto shortcut = ququart_shortcut(s);
    const auto it = shortcut.detail.find("condition");
    const double condition = it == shortcut.detail.end() ? 0.0 : it->second;
    add("shortcut condition", fixture.shortcut_condition, condition, 0.0);
    checks.push_back({fixture.name, "shortcut fired", 1.0, shortcut.fired ? 1.0 : 0.0,
                      shortcut.fired});
  }
  return checks;
}

}  // namespace abssep
