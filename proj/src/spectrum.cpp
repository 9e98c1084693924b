#include "abssep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "abssep/error.hpp"
#include "abssep/rng.hpp"

namespace abssep {

Dims::Dims(int m, int n) : m_(m), n_(n) {
  if (m_ > n_) {
    std::swap(m_, n_);
    swapped_ = true;
  }
  if (m_ < 2) {
    std::ostringstream msg;
    msg << "subsystem dimensions must both be at least 2, got (" << m << ", " << n << ")";
    throw Error(Errc::BadDims, msg.str());
  }
}

Spectrum make_spectrum(const Dims& dims, std::span<const double> raw, double sum_tolerance,
                       bool normalize) {
  if (raw.size() != static_cast<std::size_t>(dims.total())) {
    std::ostringstream msg;
    msg << "expected " << dims.total() << " eigenvalues, got " << raw.size();
    throw Error(Errc::WrongLength, msg.str());
  }
  if (!(sum_tolerance > 0.0)) {
    throw Error(Errc::OutOfRange, "sum tolerance must be positive");
  }
  std::vector<double> values(raw.begin(), raw.end());
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(Errc::NegativeEigenvalue, "eigenvalue is not finite");
    if (v < -kNegativeClamp) {
      std::ostringstream msg;
      msg << "eigenvalue " << v << " is negative";
      throw Error(Errc::NegativeEigenvalue, msg.str());
    }
  }
  if (normalize) {
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    if (!(total > 0.0)) throw Error(Errc::BadSum, "cannot normalize a spectrum with zero sum");
    for (double& v : values) v /= total;
  }
  for (double& v : values) v = std::max(v, 0.0);

  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(total - 1.0) > sum_tolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "eigenvalues sum to " << total << ", outside 1 +/- " << sum_tolerance;
    throw Error(Errc::BadSum, msg.str());
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum(dims, std::move(values), sum_tolerance);
}

double purity(const Spectrum& s) {
  double acc = 0.0;
  for (double v : s.values()) acc += v * v;
  return acc;
}

Spectrum max_mixed(const Dims& dims) {
  std::vector<double> raw(static_cast<std::size_t>(dims.total()), 1.0 / dims.total());
  return make_spectrum(dims, raw);
}

std::vector<double> draw_flat_dirichlet(std::size_t k, Rng& rng) {
  std::vector<double> out(k);
  double total = 0.0;
  for (double& v : out) {
    v = rng.exponential();
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

Spectrum sample_spectrum(const Dims& dims, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  const auto point = draw_flat_dirichlet(static_cast<std::size_t>(dims.total()), rng);
  return make_spectrum(dims, point, 1e-9);
}

std::vector<Spectrum> sample_uniform_simplex(const SpectrumEnsemble& ensemble) {
  if (ensemble.count < 1) throw Error(Errc::OutOfRange, "ensemble count must be at least 1");
  std::vector<Spectrum> out;
  out.reserve(static_cast<std::size_t>(ensemble.count));
  for (int i = 0; i < ensemble.count; ++i) {
    out.push_back(sample_spectrum(ensemble.dims, ensemble.seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace abssep
