#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abssep/linalg.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

namespace criterion {
inline constexpr const char* kExactQubit = "exact_qubit";
inline constexpr const char* kExactQutrit = "exact_qutrit";
inline constexpr const char* kExactQuquart = "exact_ququart";
inline constexpr const char* kQuquartShortcut = "ququart_shortcut";
inline constexpr const char* kSufficientSum = "sufficient_sum";
inline constexpr const char* kSufficientTwoSmallest = "sufficient_two_smallest";
inline constexpr const char* kJivulescuSum3 = "jivulescu_sum3";
inline constexpr const char* kGurvitsBall = "gurvits_ball";
inline constexpr const char* kNotAbsGeneral = "not_abs_general";
inline constexpr const char* kNotAbsQuquart = "not_abs_ququart";
inline constexpr const char* kRatioBound = "ratio_bound";
inline constexpr const char* kPurityLowerBounds = "purity_lower_bounds";
inline constexpr const char* kPurityUpperBounds = "purity_upper_bounds";
inline constexpr const char* kQubitRemark = "qubit_remark_negative";
inline constexpr const char* kSampledNecessity = "sampled_necessity";
}  // namespace criterion

/// Result of evaluating one criterion.
///
/// `margin` is the signed slack of the defining inequality (or the smallest
/// eigenvalue for matrix criteria); positive means comfortably satisfied.
/// Positive-direction criteria fire at margin >= -tol; negative-direction
/// criteria (not_abs_*) need margin > +tol.
struct CriterionOutcome {
  std::string name;
  bool fired = false;
  double margin = 0.0;
  bool applicable = true;
  std::map<std::string, double> detail;
  std::string note;

  bool operator==(const CriterionOutcome&) const = default;
};

enum class VerdictKind {
  AbsolutelyPptExact,
  AbsolutelyPptSufficient,
  NotAbsolutelyPpt,
  Indeterminate,
};

const char* to_string(VerdictKind kind) noexcept;
std::optional<VerdictKind> verdict_kind_from_string(const std::string& text);

struct Verdict {
  VerdictKind kind = VerdictKind::Indeterminate;
  std::string by;
  std::map<std::string, double> witness;

  bool operator==(const Verdict&) const = default;
};

struct Diagnostics {
  double purity = 0.0;
  CriterionOutcome gurvits_ball;
  CriterionOutcome jivulescu_sum3;
  CriterionOutcome ratio_bound;
  CriterionOutcome purity_lower;
  CriterionOutcome purity_upper;
  std::optional<CriterionOutcome> qubit_remark;
  std::optional<CriterionOutcome> sampled_necessity;

  bool operator==(const Diagnostics&) const = default;
};

struct Report {
  int m = 0;
  int n = 0;
  bool swapped = false;
  std::vector<double> spectrum;
  Verdict verdict;
  std::vector<CriterionOutcome> criteria;
  Diagnostics diagnostics;

  bool operator==(const Report&) const = default;
};

struct ClassifyOptions {
  Tolerances tol;
  /// Random vectors drawn to discover ordering pairs when p >= 5.
  int necessity_samples = 2000;
  std::uint64_t necessity_seed = 20240917;
};

/// Slack applied to inequality margins: psd_abs + psd_rel * lambda_1.
double inequality_tolerance(const Spectrum& s, const Tolerances& tol);

// Exact criteria (necessary and sufficient).
CriterionOutcome exact_qubit(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome exact_qutrit(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome exact_ququart(const Spectrum& s, const Tolerances& tol = {});
/// Dispatches on p; nullopt for p >= 5.
std::optional<CriterionOutcome> exact_criterion(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome ququart_shortcut(const Spectrum& s, const Tolerances& tol = {});

// Sufficient for absolute PPT.
CriterionOutcome sufficient_sum(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome sufficient_two_smallest(const Spectrum& s, const Tolerances& tol = {});
/// False for m >= 4: there the inequality can hold while the state is not
/// absolutely PPT (see aligned_state), so classify ignores it.
bool two_smallest_trusted(const Dims& dims) noexcept;
CriterionOutcome gurvits_ball(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome jivulescu_sum3(const Spectrum& s, const Tolerances& tol = {});

// Sufficient for NOT absolute PPT.
CriterionOutcome not_abs_general(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome not_abs_ququart(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome qubit_remark_negative(const Spectrum& s, const Tolerances& tol = {});

// Diagnostics.
CriterionOutcome ratio_bound(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome purity_lower_bounds(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome purity_upper_bounds(const Spectrum& s, const Tolerances& tol = {});
CriterionOutcome sampled_necessity(const Spectrum& s, const ClassifyOptions& options = {});

/// Smallest possible lambda_1 of a spectrum on `total` levels with the given
/// purity: (1/k)(1 + sqrt((k P - 1)/(k - 1))) for 1/k <= P <= 1/(k-1).
double min_largest_eigenvalue_given_purity(double purity, int total);

/// The k in {2..total} with 1/k <= P <= 1/(k-1); boundary ties pick the smaller k.
int purity_shell(double purity, int total);

/// Runs every applicable criterion and combines them. Throws
/// InternalInconsistency if a sufficient condition contradicts the exact
/// criterion or the two directions both fire. sufficient_two_smallest is
/// reported but not combined when m >= 4.
Report classify(const Spectrum& s, const ClassifyOptions& options = {});

}  // namespace abssep
