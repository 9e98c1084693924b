#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace abssep {

class Rng;

inline constexpr double kNegativeClamp = 1e-12;
inline constexpr double kDefaultSumTolerance = 1e-6;

/// Subsystem dimensions of a bipartite system, normalized so that m <= n.
///
/// Every criterion depends only on p = min(m, n) and m*n, so a caller passing
/// m > n gets the dimensions swapped and `swapped()` set.
class Dims {
 public:
  Dims(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  bool swapped() const noexcept { return swapped_; }

  int p() const noexcept { return m_; }
  int total() const noexcept { return m_ * n_; }
  int p_plus() const noexcept { return m_ * (m_ + 1) / 2; }
  int p_minus() const noexcept { return m_ * (m_ - 1) / 2; }

  bool operator==(const Dims&) const = default;

 private:
  int m_;
  int n_;
  bool swapped_ = false;
};

/// Validated eigenvalue spectrum, stored in non-increasing order.
class Spectrum {
 public:
  const Dims& dims() const noexcept { return dims_; }
  std::span<const double> values() const noexcept { return values_; }
  double sum_tolerance() const noexcept { return sum_tolerance_; }

  /// The k-th largest eigenvalue, 1-based (lambda(1) is the largest).
  double lambda(int k) const { return values_.at(static_cast<std::size_t>(k - 1)); }

  bool operator==(const Spectrum&) const = default;

 private:
  friend Spectrum make_spectrum(const Dims&, std::span<const double>, double, bool);
  Spectrum(Dims dims, std::vector<double> values, double sum_tolerance)
      : dims_(dims), values_(std::move(values)), sum_tolerance_(sum_tolerance) {}

  Dims dims_;
  std::vector<double> values_;
  double sum_tolerance_;
};

struct SpectrumEnsemble {
  Dims dims;
  std::uint64_t seed = 0;
  int count = 1;
};

/// Validates `raw` and sorts it descending. Entries in [-1e-12, 0) are clamped
/// to zero. With `normalize` the entries are divided by their sum first;
/// otherwise no renormalization happens.
Spectrum make_spectrum(const Dims& dims, std::span<const double> raw,
                       double sum_tolerance = kDefaultSumTolerance, bool normalize = false);

double purity(const Spectrum& s);

Spectrum max_mixed(const Dims& dims);

/// One flat-Dirichlet point on the (k-1)-simplex, in draw order (unsorted).
std::vector<double> draw_flat_dirichlet(std::size_t k, Rng& rng);

/// The `index`-th spectrum of the ensemble stream (seed, index).
Spectrum sample_spectrum(const Dims& dims, std::uint64_t seed, std::uint64_t index);

std::vector<Spectrum> sample_uniform_simplex(const SpectrumEnsemble& ensemble);

}  // namespace abssep
