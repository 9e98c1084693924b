#include <algorithm>
#include <cmath>
#include <numeric>

#include "abssep/error.hpp"
#include "abssep/fixtures.hpp"
#include "abssep/rng.hpp"
#include "abssep/spectrum.hpp"
#include "doctest.h"

using namespace abssep;

namespace {

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an abssep::Error");
  return Errc::InternalInconsistency;
}

}  // namespace

TEST_CASE("dims derive p, total and the index-set sizes") {
  const Dims d(3, 5);
  CHECK(d.p() == 3);
  CHECK(d.total() == 15);
  CHECK(d.p_plus() == 6);
  CHECK(d.p_minus() == 3);
  CHECK(d.p_plus() + d.p_minus() == d.p() * d.p());
  CHECK_FALSE(d.swapped());
}

TEST_CASE("dims swap when m > n") {
  const Dims d(5, 2);
  CHECK(d.m() == 2);
  CHECK(d.n() == 5);
  CHECK(d.swapped());
}

TEST_CASE("dims reject a factor below two") {
  CHECK(code_of([] { Dims(1, 4); }) == Errc::BadDims);
  CHECK(code_of([] { Dims(3, 0); }) == Errc::BadDims);
}

TEST_CASE("make_spectrum sorts a shuffled qutrit spectrum") {
  std::vector<double> raw{0.0961, 0.1111, 0.1336, 0.0961, 0.1111, 0.1111, 0.1336, 0.0961, 0.1111};
  const auto s = make_spectrum(Dims(3, 3), raw, 2e-3);
  const std::vector<double> expected{0.1336, 0.1336, 0.1111, 0.1111, 0.1111,
                                     0.1111, 0.0961, 0.0961, 0.0961};
  CHECK(std::equal(s.values().begin(), s.values().end(), expected.begin(), expected.end()));
  CHECK(s.lambda(1) == 0.1336);
  CHECK(s.lambda(9) == 0.0961);
}

TEST_CASE("make_spectrum validation errors") {
  const std::vector<double> two{0.5, 0.5};
  CHECK(code_of([&] { make_spectrum(Dims(2, 2), two); }) == Errc::WrongLength);
  const std::vector<double> doubled{0.5, 0.5, 0.5, 0.5};
  CHECK(code_of([&] { make_spectrum(Dims(2, 2), doubled); }) == Errc::BadSum);
  const std::vector<double> negative{0.6, 0.3, 0.2, -0.1};
  CHECK(code_of([&] { make_spectrum(Dims(2, 2), negative); }) == Errc::NegativeEigenvalue);
  const std::vector<double> nan_entry{0.5, 0.5, NAN, 0.0};
  CHECK(code_of([&] { make_spectrum(Dims(2, 2), nan_entry); }) == Errc::NegativeEigenvalue);
}

TEST_CASE("make_spectrum clamps floating-point dust and never renormalizes") {
  const std::vector<double> dusty{0.5, 0.5, 0.0, -1e-13};
  const auto s = make_spectrum(Dims(2, 2), dusty);
  CHECK(s.lambda(4) == 0.0);

  const std::vector<double> off{0.25, 0.25, 0.25, 0.2504};
  const auto loose = make_spectrum(Dims(2, 2), off, 1e-3);
  CHECK(loose.lambda(1) == 0.2504);

  const std::vector<double> scaled{2.0, 1.0, 1.0, 0.0};
  const auto normalized = make_spectrum(Dims(2, 2), scaled, 1e-12, true);
  CHECK(normalized.lambda(1) == doctest::Approx(0.5));
}

TEST_CASE("make_spectrum is permutation invariant") {
  std::vector<double> raw{0.4, 0.3, 0.2, 0.1, 0.0, 0.0};
  const auto reference = make_spectrum(Dims(2, 3), raw);
  std::sort(raw.begin(), raw.end());
  do {
    CHECK(make_spectrum(Dims(2, 3), raw) == reference);
  } while (std::next_permutation(raw.begin(), raw.end()));
}

TEST_CASE("max_mixed and purity") {
  const auto mm = max_mixed(Dims(2, 2));
  for (double v : mm.values()) CHECK(v == 0.25);
  CHECK(max_mixed(Dims(3, 4)).values().size() == 12);
  CHECK(purity(max_mixed(Dims(3, 3))) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(purity(max_mixed(Dims(3, 4))) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

  const std::vector<double> pure{1.0, 0.0, 0.0, 0.0};
  CHECK(purity(make_spectrum(Dims(2, 2), pure)) == 1.0);
}

TEST_CASE("purity agrees with direct summation on the qutrit fixture") {
  const auto& f = worked_example("qutrit-abs-ppt");
  double direct = 0.0;
  for (double v : f.eigenvalues) direct += v * v;
  const double p = purity(f.spectrum());
  CHECK(p == doctest::Approx(direct).epsilon(1e-14));
  CHECK(p >= 1.0 / 9.0);
  CHECK(p <= 1.0);
}

TEST_CASE("uniform simplex samples validate and are deterministic") {
  const SpectrumEnsemble ensemble{Dims(2, 2), 42, 1000};
  const auto a = sample_uniform_simplex(ensemble);
  const auto b = sample_uniform_simplex(ensemble);
  REQUIRE(a.size() == 1000);
  CHECK(a == b);
  for (const auto& s : a) {
    CHECK(std::is_sorted(s.values().begin(), s.values().end(), std::greater<>()));
    const std::vector<double> copy(s.values().begin(), s.values().end());
    CHECK_NOTHROW(make_spectrum(Dims(2, 2), copy, 1e-9));
  }
  CHECK(sample_uniform_simplex({Dims(2, 2), 43, 5}).front() != a.front());
}

TEST_CASE("flat Dirichlet mean is 1/k in every coordinate") {
  constexpr int k = 6;
  constexpr int draws = 100000;
  Rng rng(9, 0);
  std::vector<double> sum(k, 0.0);
  std::vector<double> sum_sq(k, 0.0);
  for (int i = 0; i < draws; ++i) {
    const auto x = draw_flat_dirichlet(k, rng);
    for (int j = 0; j < k; ++j) {
      sum[j] += x[static_cast<std::size_t>(j)];
      sum_sq[j] += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    }
  }
  for (int j = 0; j < k; ++j) {
    const double mean = sum[j] / draws;
    const double var = sum_sq[j] / draws - mean * mean;
    CHECK(std::abs(mean - 1.0 / k) <= 3.0 * std::sqrt(var / draws));
  }
}

TEST_CASE("purity is minimal exactly at the maximally mixed point") {
  for (int i = 0; i < 500; ++i) {
    const auto s = sample_spectrum(Dims(3, 4), 5, static_cast<std::uint64_t>(i));
    CHECK(purity(s) >= 1.0 / 12.0 - 1e-12);
    const double total = std::accumulate(s.values().begin(), s.values().end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(1, 0), b(1, 0), c(1, 1);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  Rng r(3, 4);
  for (int i = 0; i < 1000; ++i) {
    const int v = r.uniform_int(-2, 5);
    CHECK(v >= -2);
    CHECK(v <= 5);
    const double u = r.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
