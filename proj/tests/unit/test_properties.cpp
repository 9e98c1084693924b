#include <cmath>
#include <map>

#include "../support/ensembles.hpp"
#include "abssep/criteria.hpp"
#include "abssep/linalg.hpp"
#include "abssep/matricization.hpp"
#include "abssep/oracle.hpp"
#include "doctest.h"

using namespace abssep;
using abssep::testing::property_dims;
using abssep::testing::shrunk_spectrum;

namespace {

constexpr int kSamples = 10000;

template <typename F>
void for_each_spectrum(F&& check) {
  for (const auto& dims : property_dims()) {
    for (int i = 0; i < kSamples; ++i) {
      check(sample_spectrum(dims, 101, static_cast<std::uint64_t>(i)));
      check(shrunk_spectrum(dims, 101, static_cast<std::uint64_t>(i)));
    }
  }
}

}  // namespace

TEST_CASE("sufficient conditions agree with the exact criteria") {
  std::map<std::string, int> fired;
  for_each_spectrum([&](const Spectrum& s) {
    const auto exact = exact_criterion(s);
    REQUIRE(exact.has_value());
    for (const auto& o : {sufficient_sum(s), sufficient_two_smallest(s), gurvits_ball(s)}) {
      if (!o.fired) continue;
      ++fired[o.name];
      if (o.name == criterion::kSufficientTwoSmallest && !two_smallest_trusted(s.dims())) continue;
      CHECK_MESSAGE(exact->fired, o.name << " fired on a spectrum the exact test rejects");
    }
    std::vector<CriterionOutcome> negative;
    if (s.dims().m() >= 3) negative.push_back(not_abs_general(s));
    if (s.dims().m() == 4) negative.push_back(not_abs_ququart(s));
    for (const auto& o : negative) {
      if (!o.fired) continue;
      ++fired[o.name];
      CHECK_MESSAGE(!exact->fired, o.name << " fired on a spectrum the exact test accepts");
    }
    CHECK_NOTHROW(classify(s));
  });
  for (const char* name : {criterion::kSufficientSum, criterion::kSufficientTwoSmallest,
                           criterion::kGurvitsBall, criterion::kNotAbsGeneral,
                           criterion::kNotAbsQuquart}) {
    CAPTURE(name);
    CHECK(fired[name] > 100);
  }
}

TEST_CASE("two smallest gives the weighted qutrit bound") {
  for_each_spectrum([&](const Spectrum& s) {
    if (s.dims().m() != 3 || !sufficient_two_smallest(s).fired) return;
    const int N = s.dims().total();
    const double tol = inequality_tolerance(s, {});
    CHECK(2 * s.lambda(N) + s.lambda(N - 1) + s.lambda(N - 2) >= s.lambda(1) + s.lambda(2) - tol);
  });
}

TEST_CASE("two smallest firing at m = 4 against the exact test is a real violation") {
  int seen = 0;
  for_each_spectrum([&](const Spectrum& s) {
    if (s.dims().m() != 4 || !sufficient_two_smallest(s).fired) return;
    const auto exact = exact_ququart(s);
    if (exact.fired) return;
    ++seen;
    const auto w = x_witness(s);
    REQUIRE(w.has_value());
    const auto state = aligned_state(s, w->x);
    CHECK(state.overlap < 0.0);
    CHECK(hermitian_min_eigenvalue(partial_transpose(state.state)) < 0.0);
    CHECK(classify(s).verdict.kind == VerdictKind::NotAbsolutelyPpt);
  });
  MESSAGE("m = 4 spectra where two smallest fires but the state is not absolutely PPT: " << seen);
}

TEST_CASE("two smallest implies the exact qubit condition") {
  for_each_spectrum([&](const Spectrum& s) {
    if (s.dims().m() != 2) return;
    if (sufficient_two_smallest(s).fired) CHECK(exact_qubit(s).fired);
  });
}

TEST_CASE("sum condition makes every ququart matrix diagonally dominant") {
  int seen = 0;
  for_each_spectrum([&](const Spectrum& s) {
    if (s.dims().m() != 4 || !sufficient_sum(s).fired) return;
    ++seen;
    for (const auto& op : canonical_pairs(4)) {
      const auto a = build_lambda_sym(s, op);
      for (int r = 0; r < 4; ++r) {
        double off = 0.0;
        for (int c = 0; c < 4; ++c)
          if (c != r) off += std::abs(a(r, c));
        CHECK(a(r, r) >= off - 1e-12);
      }
    }
  });
  CHECK(seen > 100);
}

TEST_CASE("the row test certifies a non-PSD column-major matrix") {
  int seen = 0;
  for_each_spectrum([&](const Spectrum& s) {
    if (s.dims().m() < 3 || !not_abs_general(s).fired) return;
    ++seen;
    const auto a = build_lambda_sym(s, column_major_pair(s.dims().m()));
    const int p = a.size();
    for (int r = 0; r < p; ++r) CHECK_FALSE(row_diagonally_dominant(a, r));
    CHECK(all_ones_quadratic(a) <= 0.0);
    CHECK_FALSE(is_psd(a).psd);
  });
  CHECK(seen > 100);
}

TEST_CASE("consequences of the sum condition") {
  for_each_spectrum([&](const Spectrum& s) {
    if (!sufficient_sum(s).fired) return;
    const auto ratio = ratio_bound(s);
    if (ratio.applicable) CHECK(ratio.fired);
    CHECK(purity_lower_bounds(s).fired);
  });
}

TEST_CASE("compatible pairs of random vectors lie in the canonical sets") {
  Rng rng(404, 0);
  for (int p = 2; p <= 4; ++p) {
    const auto canon = canonical_pairs(p);
    for (int i = 0; i < 5000; ++i) {
      std::vector<double> x(static_cast<std::size_t>(p));
      for (double& v : x) v = rng.uniform_open();
      std::sort(x.begin(), x.end(), std::greater<>());
      const auto op = compatible_pair_for(SchmidtVector(x));
      CHECK(std::find(canon.begin(), canon.end(), op) != canon.end());
    }
  }
}
