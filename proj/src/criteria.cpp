#include "abssep/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "abssep/error.hpp"
#include "abssep/matricization.hpp"

namespace abssep {

namespace {

constexpr double kEqualityTolerance = 1e-12;

void require_m(const Spectrum& s, int m, const char* name) {
  if (s.dims().m() != m) {
    std::ostringstream msg;
    msg << name << " needs m = " << m << ", got m = " << s.dims().m();
    throw Error(Errc::WrongDims, msg.str());
  }
}

CriterionOutcome positive_inequality(const char* name, double lhs, double rhs, double tol) {
  CriterionOutcome out;
  out.name = name;
  out.margin = lhs - rhs;
  out.fired = out.margin >= -tol;
  out.detail = {{"lhs", lhs}, {"rhs", rhs}};
  return out;
}

CriterionOutcome negative_inequality(const char* name, double lhs, double rhs, double tol) {
  CriterionOutcome out;
  out.name = name;
  out.margin = lhs - rhs;
  out.fired = out.margin > tol;
  out.detail = {{"lhs", lhs}, {"rhs", rhs}};
  return out;
}

// Tests the matrices built from `pairs` (1-based positions `which`, or all).
CriterionOutcome lmi_criterion(const char* name, const Spectrum& s,
                               const std::vector<OrderingPair>& pairs,
                               const std::vector<int>& which, const Tolerances& tol) {
  CriterionOutcome out;
  out.name = name;
  out.fired = true;
  out.margin = std::numeric_limits<double>::infinity();
  int worst = 0;
  for (int t : which) {
    const auto matrix = build_lambda_sym(s, pairs[static_cast<std::size_t>(t - 1)]);
    const auto psd = is_psd(matrix, tol);
    out.detail["min_eigenvalue_" + std::to_string(t)] = psd.min_eigenvalue;
    out.fired = out.fired && psd.psd;
    if (psd.min_eigenvalue < out.margin) {
      out.margin = psd.min_eigenvalue;
      worst = t;
    }
  }
  out.detail["worst_matrix"] = worst;
  return out;
}

std::vector<int> all_indices(std::size_t count) {
  std::vector<int> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<int>(i) + 1;
  return out;
}

void add_matrix_witness(CriterionOutcome& outcome, const SymMatrix& matrix, int index,
                        const Tolerances& tol) {
  outcome.detail["witness_matrix"] = index;
  outcome.detail["witness_min_eigenvalue"] = is_psd(matrix, tol).min_eigenvalue;
  outcome.detail["witness_all_ones"] = all_ones_quadratic(matrix);
}

const std::vector<OrderingPair>& cached_sample_pairs(int p, std::uint64_t seed, int samples) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::uint64_t, int>, std::vector<OrderingPair>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(p, seed, samples);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, sample_pairs(p, seed, samples)).first;
  return it->second;
}

std::map<std::string, double> matrix_witness(const CriterionOutcome& outcome) {
  std::map<std::string, double> witness{{"margin", outcome.margin}};
  const auto copy = [&](const char* from, const char* to) {
    if (auto it = outcome.detail.find(from); it != outcome.detail.end()) witness[to] = it->second;
  };
  copy("witness_matrix", "matrix_index");
  copy("witness_min_eigenvalue", "min_eigenvalue");
  copy("witness_all_ones", "all_ones_quadratic");
  copy("lhs", "lhs");
  copy("rhs", "rhs");
  return witness;
}

[[noreturn]] void inconsistent(const std::string& what) {
  throw Error(Errc::InternalInconsistency, what);
}

}  // namespace

const char* to_string(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::AbsolutelyPptExact: return "absolutely-ppt-exact";
    case VerdictKind::AbsolutelyPptSufficient: return "absolutely-ppt-sufficient";
    case VerdictKind::NotAbsolutelyPpt: return "not-absolutely-ppt";
    case VerdictKind::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::optional<VerdictKind> verdict_kind_from_string(const std::string& text) {
  for (auto kind : {VerdictKind::AbsolutelyPptExact, VerdictKind::AbsolutelyPptSufficient,
                    VerdictKind::NotAbsolutelyPpt, VerdictKind::Indeterminate}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

double inequality_tolerance(const Spectrum& s, const Tolerances& tol) {
  return tol.psd_abs + tol.psd_rel * s.lambda(1);
}

CriterionOutcome exact_qubit(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 2, criterion::kExactQubit);
  const int N = s.dims().total();
  const double rhs = s.lambda(N - 1) + 2.0 * std::sqrt(s.lambda(N - 2) * s.lambda(N));
  return positive_inequality(criterion::kExactQubit, rhs, s.lambda(1),
                             inequality_tolerance(s, tol));
}

CriterionOutcome exact_qutrit(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 3, criterion::kExactQutrit);
  const auto pairs = canonical_pairs(3);
  return lmi_criterion(criterion::kExactQutrit, s, pairs, all_indices(pairs.size()), tol);
}

CriterionOutcome exact_ququart(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 4, criterion::kExactQuquart);
  const auto pairs = canonical_pairs(4);
  return lmi_criterion(criterion::kExactQuquart, s, pairs, all_indices(pairs.size()), tol);
}

std::optional<CriterionOutcome> exact_criterion(const Spectrum& s, const Tolerances& tol) {
  switch (s.dims().p()) {
    case 2: return exact_qubit(s, tol);
    case 3: return exact_qutrit(s, tol);
    case 4: return exact_ququart(s, tol);
    default: return std::nullopt;
  }
}

CriterionOutcome ququart_shortcut(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 4, criterion::kQuquartShortcut);
  const int N = s.dims().total();
  const auto eq = [&](int a, int b) {
    return std::abs(s.lambda(a) - s.lambda(b)) <= kEqualityTolerance;
  };
  const bool tail_23 = eq(N - 2, N - 3);
  const bool tail_67 = eq(N - 6, N - 7);
  const bool tail_567 = eq(N - 5, N - 6) && tail_67;
  const bool tail_all = tail_23 && eq(N - 3, N - 4) && eq(N - 4, N - 5) && tail_567;

  int condition = 0;
  std::vector<int> which;
  if (tail_all) {
    condition = 3;
    // Lambda_3..Lambda_8 swap lambda_3 and lambda_4 in the lower triangle
    // relative to the others, so one matrix suffices only when they coincide.
    which = eq(3, 4) ? std::vector<int>{1} : std::vector<int>{1, 3};
  } else if (tail_23 && tail_567) {
    condition = 2;
    which = {1, 5, 9};
  } else if (tail_23 && tail_67) {
    condition = 1;
    which = {1, 3, 5, 9};
  }

  if (condition == 0) {
    CriterionOutcome out;
    out.name = criterion::kQuquartShortcut;
    out.applicable = false;
    out.note = "no equality condition";
    return out;
  }
  auto out = lmi_criterion(criterion::kQuquartShortcut, s, canonical_pairs(4), which, tol);
  out.detail["condition"] = condition;
  out.detail["matrices_tested"] = static_cast<double>(which.size());
  std::ostringstream note;
  note << "condition (" << std::string(static_cast<std::size_t>(condition), 'i') << "): tested";
  for (int t : which) note << " L" << t;
  out.note = note.str();
  return out;
}

CriterionOutcome sufficient_sum(const Spectrum& s, const Tolerances& tol) {
  const int m = s.dims().m();
  const int N = s.dims().total();
  double lhs = 0.0;
  for (int k = 0; k < m; ++k) lhs += s.lambda(N - k);
  double rhs = 0.0;
  for (int k = 1; k <= m - 1; ++k) rhs += s.lambda(k);
  return positive_inequality(criterion::kSufficientSum, lhs, rhs, inequality_tolerance(s, tol));
}

bool two_smallest_trusted(const Dims& dims) noexcept { return dims.m() <= 3; }

CriterionOutcome sufficient_two_smallest(const Spectrum& s, const Tolerances& tol) {
  const int N = s.dims().total();
  auto out = positive_inequality(criterion::kSufficientTwoSmallest, s.lambda(N) + s.lambda(N - 1),
                                 s.lambda(1), inequality_tolerance(s, tol));
  if (!two_smallest_trusted(s.dims())) out.note = "not used for the verdict when m >= 4";
  return out;
}

CriterionOutcome jivulescu_sum3(const Spectrum& s, const Tolerances& tol) {
  const int N = s.dims().total();
  auto out = positive_inequality(criterion::kJivulescuSum3,
                                 s.lambda(N) + s.lambda(N - 1) + s.lambda(N - 2), s.lambda(1),
                                 inequality_tolerance(s, tol));
  out.note = "diagnostic only";
  return out;
}

CriterionOutcome gurvits_ball(const Spectrum& s, const Tolerances& tol) {
  const int N = s.dims().total();
  auto out = positive_inequality(criterion::kGurvitsBall, 1.0 / (N - 1), purity(s),
                                 inequality_tolerance(s, tol));
  out.detail = {{"purity", purity(s)}, {"radius", 1.0 / (N - 1)}};
  return out;
}

CriterionOutcome not_abs_general(const Spectrum& s, const Tolerances& tol) {
  const int m = s.dims().m();
  if (m < 3) throw Error(Errc::WrongDims, "not_abs_general needs m >= 3; m = 2 is decided exactly");
  const int N = s.dims().total();
  const int head = (m - 1) * (m - 2) / 2;
  double lhs = 0.0;
  double rhs = 2.0 * s.lambda(N + 1 - m * (m + 1) / 2);
  for (int k = 1; k <= m - 1; ++k) {
    lhs += s.lambda(head + k);
    rhs += s.lambda(N + 1 - m * (m - 1) / 2 - k);
  }
  auto out = negative_inequality(criterion::kNotAbsGeneral, lhs, rhs, inequality_tolerance(s, tol));
  const auto column_major = column_major_pair(m);
  // Position of the column-major ordering among the canonical pairs.
  const int index = m == 3 ? 1 : (m == 4 ? 4 : 0);
  add_matrix_witness(out, build_lambda_sym(s, column_major), index, tol);
  return out;
}

CriterionOutcome not_abs_ququart(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 4, criterion::kNotAbsQuquart);
  const int N = s.dims().total();
  const double lhs = s.lambda(3) + s.lambda(5) + s.lambda(6);
  const double rhs = 2.0 * s.lambda(N - 9) + s.lambda(N - 8) + s.lambda(N - 6) + s.lambda(N - 3);
  auto out = negative_inequality(criterion::kNotAbsQuquart, lhs, rhs, inequality_tolerance(s, tol));
  add_matrix_witness(out, build_lambda_sym(s, canonical_pairs(4).front()), 1, tol);
  return out;
}

CriterionOutcome qubit_remark_negative(const Spectrum& s, const Tolerances& tol) {
  require_m(s, 2, criterion::kQubitRemark);
  const int N = s.dims().total();
  auto out = negative_inequality(criterion::kQubitRemark, s.lambda(1),
                                 s.lambda(N) + s.lambda(N - 1) + 2.0 * s.lambda(N - 2),
                                 inequality_tolerance(s, tol));
  out.note = "diagnostic only";
  return out;
}

CriterionOutcome ratio_bound(const Spectrum& s, const Tolerances& tol) {
  const int m = s.dims().m();
  const int N = s.dims().total();
  CriterionOutcome out;
  out.name = criterion::kRatioBound;
  const double bound = static_cast<double>(m - 1) / m;
  const double denominator = s.lambda(m - 1);
  out.detail["bound"] = bound;
  if (!(denominator > 0.0)) {
    out.applicable = false;
    out.note = "lambda_{m-1} = 0";
    return out;
  }
  const double ratio = s.lambda(N - m + 1) / denominator;
  out.detail["ratio"] = ratio;
  out.margin = ratio - bound;
  out.fired = out.margin >= -inequality_tolerance(s, tol);
  return out;
}

CriterionOutcome purity_lower_bounds(const Spectrum& s, const Tolerances& tol) {
  const int m = s.dims().m();
  const int N = s.dims().total();
  const double P = purity(s);
  const double factor = std::pow(static_cast<double>(m - 1) / m, 2);
  const double lam = s.lambda(m - 1);
  const double l1 = s.lambda(1);
  const double slack_19 = (P - l1 * l1) / (N - 1) - factor * lam * lam;
  const double slack_20 = P - (factor * (N - 1) + 1.0) * lam * lam;
  CriterionOutcome out;
  out.name = criterion::kPurityLowerBounds;
  out.margin = std::min(slack_19, slack_20);
  out.fired = out.margin >= -inequality_tolerance(s, tol);
  out.detail = {{"slack_eigen_purity", slack_19}, {"slack_purity", slack_20}};
  return out;
}

int purity_shell(double purity, int total) {
  if (total < 2) throw Error(Errc::OutOfRange, "total must be at least 2");
  const double slack = 1e-12;
  if (purity < 1.0 / total - slack || purity > 1.0 + slack) {
    std::ostringstream msg;
    msg << "purity " << purity << " outside [1/" << total << ", 1]";
    throw Error(Errc::OutOfRange, msg.str());
  }
  for (int k = 2; k <= total; ++k) {
    if (purity >= 1.0 / k - slack) return k;
  }
  return total;
}

double min_largest_eigenvalue_given_purity(double purity, int total) {
  const int k = purity_shell(purity, total);
  const double radicand = std::max(0.0, (k * purity - 1.0) / (k - 1));
  return (1.0 + std::sqrt(radicand)) / k;
}

CriterionOutcome purity_upper_bounds(const Spectrum& s, const Tolerances& tol) {
  const int N = s.dims().total();
  const double P = purity(s);
  const int k = purity_shell(P, N);
  const double lhs = 1.0 + std::sqrt(std::max(0.0, (k * P - 1.0) / (k - 1)));
  CriterionOutcome out;
  out.name = criterion::kPurityUpperBounds;
  out.detail = {
      {"k", k},
      {"bound_4", 4.0 / (N + 3)},
      {"bound_9", 9.0 / (N + 8)},
      {"slack_bound_4", 4.0 / (N + 3) - P},
      {"slack_bound_9", 9.0 / (N + 8) - P},
      {"slack_shell_2k", 2.0 * k * std::sqrt(P / (N + 3)) - lhs},
      {"slack_shell_3k", 3.0 * k * std::sqrt(P / (N + 8)) - lhs},
  };
  out.margin = 4.0 / (N + 3) - P;
  out.fired = out.margin >= -inequality_tolerance(s, tol);
  out.note = "diagnostic only";
  return out;
}

CriterionOutcome sampled_necessity(const Spectrum& s, const ClassifyOptions& options) {
  const int p = s.dims().p();
  const auto& pairs = cached_sample_pairs(p, options.necessity_seed, options.necessity_samples);
  CriterionOutcome out;
  out.name = criterion::kSampledNecessity;
  out.margin = std::numeric_limits<double>::infinity();
  for (const auto& pair : pairs) {
    const auto psd = is_psd(build_lambda_sym(s, pair), options.tol);
    out.margin = std::min(out.margin, psd.min_eigenvalue);
    out.fired = out.fired || !psd.psd;
  }
  out.detail = {{"pairs_tested", static_cast<double>(pairs.size())}};
  out.note = out.fired ? "non-PSD matricization found: evidence against absolute PPT"
                       : "no non-PSD matricization among sampled orderings";
  return out;
}

Report classify(const Spectrum& s, const ClassifyOptions& options) {
  options.tol.validate();
  const auto& tol = options.tol;
  const int m = s.dims().m();

  Report report;
  report.m = s.dims().m();
  report.n = s.dims().n();
  report.swapped = s.dims().swapped();
  report.spectrum.assign(s.values().begin(), s.values().end());

  const auto exact = exact_criterion(s, tol);
  std::optional<CriterionOutcome> shortcut;
  if (exact) report.criteria.push_back(*exact);
  if (m == 4) {
    shortcut = ququart_shortcut(s, tol);
    report.criteria.push_back(*shortcut);
  }

  const std::array<CriterionOutcome, 3> positive{gurvits_ball(s, tol), sufficient_sum(s, tol),
                                                 sufficient_two_smallest(s, tol)};
  report.criteria.push_back(positive[1]);
  report.criteria.push_back(positive[2]);
  report.criteria.push_back(positive[0]);

  std::vector<CriterionOutcome> negative;
  if (m == 4) negative.push_back(not_abs_ququart(s, tol));
  if (m >= 3) negative.push_back(not_abs_general(s, tol));
  for (auto it = negative.rbegin(); it != negative.rend(); ++it) report.criteria.push_back(*it);

  auto& diag = report.diagnostics;
  diag.purity = purity(s);
  diag.gurvits_ball = positive[0];
  diag.jivulescu_sum3 = jivulescu_sum3(s, tol);
  diag.ratio_bound = ratio_bound(s, tol);
  diag.purity_lower = purity_lower_bounds(s, tol);
  diag.purity_upper = purity_upper_bounds(s, tol);
  if (m == 2) diag.qubit_remark = qubit_remark_negative(s, tol);
  if (!exact) diag.sampled_necessity = sampled_necessity(s, options);

  const auto first_fired = [](const auto& outcomes) -> const CriterionOutcome* {
    for (const auto& o : outcomes)
      if (o.fired) return &o;
    return nullptr;
  };
  std::vector<CriterionOutcome> trusted_positive;
  for (const auto& o : positive)
    if (o.name != criterion::kSufficientTwoSmallest || two_smallest_trusted(s.dims()))
      trusted_positive.push_back(o);
  const CriterionOutcome* yes = first_fired(trusted_positive);
  const CriterionOutcome* no = first_fired(negative);

  if (yes != nullptr && no != nullptr) {
    inconsistent(std::string(yes->name) + " and " + no->name + " both fired");
  }
  if (shortcut && shortcut->applicable && shortcut->fired != exact->fired) {
    inconsistent("ququart_shortcut disagrees with exact_ququart");
  }

  auto& verdict = report.verdict;
  if (exact) {
    if (exact->fired) {
      if (no != nullptr) inconsistent(no->name + " fired against " + exact->name);
      verdict.kind = VerdictKind::AbsolutelyPptExact;
      verdict.by = exact->name;
      verdict.witness = {{"margin", exact->margin}};
    } else {
      if (yes != nullptr) inconsistent(yes->name + " fired against " + exact->name);
      verdict.kind = VerdictKind::NotAbsolutelyPpt;
      if (no != nullptr) {
        verdict.by = no->name;
        verdict.witness = matrix_witness(*no);
      } else {
        verdict.by = exact->name;
        verdict.witness = {{"margin", exact->margin}};
        if (m >= 3) {
          const int worst = static_cast<int>(exact->detail.at("worst_matrix"));
          const auto matrix = build_lambda_sym(s, canonical_pairs(m)[static_cast<std::size_t>(worst - 1)]);
          verdict.witness["matrix_index"] = worst;
          verdict.witness["min_eigenvalue"] = exact->margin;
          verdict.witness["all_ones_quadratic"] = all_ones_quadratic(matrix);
        } else {
          verdict.witness["lhs"] = exact->detail.at("lhs");
          verdict.witness["rhs"] = exact->detail.at("rhs");
        }
      }
    }
  } else if (yes != nullptr) {
    verdict.kind = VerdictKind::AbsolutelyPptSufficient;
    verdict.by = yes->name;
    verdict.witness = {{"margin", yes->margin}};
  } else if (no != nullptr) {
    verdict.kind = VerdictKind::NotAbsolutelyPpt;
    verdict.by = no->name;
    verdict.witness = matrix_witness(*no);
  } else {
    verdict.kind = VerdictKind::Indeterminate;
  }
  return report;
}

}  // namespace abssep
