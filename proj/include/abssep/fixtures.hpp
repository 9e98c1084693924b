#pragma once

#include <string>
#include <vector>

#include "abssep/criteria.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

struct ExpectedMatrix {
  int index = 0;  // 1-based into canonical_pairs(p)
  std::vector<double> eigenvalues;  // ascending, as printed
  /// Printed symmetric matrix, row-major; empty when none was printed.
  std::vector<double> entries;
};

struct ExpectedMargin {
  std::string criterion;
  double value = 0.0;
};

/// One worked example with its reference values.
struct WorkedExample {
  std::string name;
  std::string description;
  int m = 0;
  int n = 0;
  std::vector<double> eigenvalues;  // lambda_1 .. lambda_mn as printed
  double sum_tolerance = 2e-3;
  VerdictKind verdict = VerdictKind::Indeterminate;
  std::string verdict_by;
  std::vector<ExpectedMatrix> matrices;
  std::vector<ExpectedMargin> margins;
  /// Equality condition of the ququart shortcut (0 = none expected).
  int shortcut_condition = 0;

  Spectrum spectrum() const;
};

inline constexpr double kFixtureEigenTolerance = 5e-4;
inline constexpr double kFixtureMarginTolerance = 1e-4;

const std::vector<WorkedExample>& worked_examples();
const WorkedExample& worked_example(const std::string& name);

struct FixtureCheck {
  std::string fixture;
  std::string assertion;
  double expected = 0.0;
  double actual = 0.0;
  bool passed = false;
};

/// Evaluates every printed value of `fixture`. Eigenvalue and matrix-entry
/// comparisons use `eigen_tol`, margins use `margin_tol`.
std::vector<FixtureCheck> check_fixture(const WorkedExample& fixture,
                                        double eigen_tol = kFixtureEigenTolerance,
                                        double margin_tol = kFixtureMarginTolerance);

}  // namespace abssep
