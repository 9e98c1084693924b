#include "abssep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "abssep/error.hpp"
#include "abssep/rng.hpp"

namespace abssep {

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix entries, double trace_tol)
    : dims_(dims), entries_(std::move(entries)) {
  if (entries_.dim() != dims_.total()) {
    std::ostringstream msg;
    msg << "matrix of size " << entries_.dim() << " for dims " << dims_.m() << "x" << dims_.n();
    throw Error(Errc::DimensionMismatch, msg.str());
  }
  if (entries_.hermiticity_error() > 1e-12) {
    throw Error(Errc::OutOfRange, "density matrix is not Hermitian");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr.real() - 1.0) > trace_tol || std::abs(tr.imag()) > 1e-12) {
    throw Error(Errc::BadSum, "density matrix trace differs from 1");
  }
}

DensityMatrix embed_diag(const Spectrum& s) {
  std::vector<double> diag(s.values().begin(), s.values().end());
  return DensityMatrix(s.dims(), ComplexMatrix::diagonal(diag),
                       std::max(1e-10, s.sum_tolerance()));
}

ComplexMatrix haar_unitary(int d, std::uint64_t seed) {
  Rng rng(seed, 0);
  return haar_unitary(d, rng);
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw Error(Errc::OutOfRange, "unitary dimension must be positive");
  const double scale = std::sqrt(0.5);
  ComplexMatrix a(d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(r, c) = Complex(re * scale, im * scale);
    }
  }

  // Householder QR, accumulating Q = H_0 H_1 ... H_{d-1}.
  ComplexMatrix q = ComplexMatrix::identity(d);
  std::vector<Complex> v(static_cast<std::size_t>(d));
  std::vector<Complex> r_diag(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    double norm2 = 0.0;
    for (int i = k; i < d; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    const Complex head = a(k, k);
    const Complex phase = std::abs(head) > 0.0 ? head / std::abs(head) : Complex(1.0, 0.0);
    const Complex alpha = -phase * norm;
    r_diag[static_cast<std::size_t>(k)] = alpha;
    for (int i = k; i < d; ++i) v[static_cast<std::size_t>(i)] = a(i, k);
    v[static_cast<std::size_t>(k)] -= alpha;
    double vnorm2 = 0.0;
    for (int i = k; i < d; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
    if (vnorm2 == 0.0) continue;
    // A <- (I - 2 v v^H / |v|^2) A on the trailing block.
    for (int c = k; c < d; ++c) {
      Complex dot = 0.0;
      for (int i = k; i < d; ++i) dot += std::conj(v[static_cast<std::size_t>(i)]) * a(i, c);
      const Complex f = 2.0 * dot / vnorm2;
      for (int i = k; i < d; ++i) a(i, c) -= f * v[static_cast<std::size_t>(i)];
    }
    // Q <- Q (I - 2 v v^H / |v|^2).
    for (int r = 0; r < d; ++r) {
      Complex dot = 0.0;
      for (int i = k; i < d; ++i) dot += q(r, i) * v[static_cast<std::size_t>(i)];
      const Complex f = 2.0 * dot / vnorm2;
      for (int i = k; i < d; ++i) q(r, i) -= f * std::conj(v[static_cast<std::size_t>(i)]);
    }
  }
  for (int c = 0; c < d; ++c) {
    const Complex rd = r_diag[static_cast<std::size_t>(c)];
    const Complex phase = std::abs(rd) > 0.0 ? rd / std::abs(rd) : Complex(1.0, 0.0);
    for (int r = 0; r < d; ++r) q(r, c) *= phase;
  }
  return q;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims) {
  const int m = dims.m();
  const int n = dims.n();
  if (rho.dim() != m * n) throw Error(Errc::DimensionMismatch, "matrix size differs from m*n");
  ComplexMatrix out(rho.dim());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < n; ++l) out(i * n + l, j * n + k) = rho(i * n + k, j * n + l);
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix(), rho.dims());
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> lambda) {
  const int d = u.dim();
  if (static_cast<int>(lambda.size()) != d) {
    throw Error(Errc::DimensionMismatch, "eigenvalue count differs from unitary size");
  }
  ComplexMatrix out(d);
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) {
      Complex sum = 0.0;
      for (int k = 0; k < d; ++k) sum += lambda[static_cast<std::size_t>(k)] * u(r, k) * std::conj(u(c, k));
      out(r, c) = sum;
      out(c, r) = std::conj(sum);
    }
    out(r, r) = Complex(out(r, r).real(), 0.0);
  }
  return out;
}

FalsifierResult random_unitary_falsifier(const Spectrum& s, int trials, std::uint64_t seed,
                                         const Tolerances& tol, bool stop_at_first) {
  const int d = s.dims().total();
  if (d > kMaxOracleTotal) {
    std::ostringstream msg;
    msg << "m*n = " << d << " exceeds " << kMaxOracleTotal;
    throw Error(Errc::DimensionTooLarge, msg.str());
  }
  FalsifierResult result;
  result.smallest_pt_eigenvalue = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed, static_cast<std::uint64_t>(trial));
    const auto rho = conjugate_diagonal(haar_unitary(d, rng), s.values());
    const auto pt = partial_transpose(rho, s.dims());
    const double min_eig = hermitian_min_eigenvalue(pt, tol);
    double max_abs = 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) max_abs = std::max(max_abs, std::abs(pt(r, c)));
    ++result.trials_run;
    result.smallest_pt_eigenvalue = std::min(result.smallest_pt_eigenvalue, min_eig);
    if (!result.witness && min_eig < -(tol.psd_abs + tol.psd_rel * max_abs)) {
      result.witness = FalsifierWitness{trial, min_eig};
      if (stop_at_first) break;
    }
  }
  if (result.trials_run == 0) result.smallest_pt_eigenvalue = 0.0;
  return result;
}

std::optional<XWitness> x_witness(const Spectrum& s, const Tolerances& tol) {
  const int p = s.dims().p();
  if (p > 4) throw Error(Errc::UnsupportedP, "x_witness needs p <= 4");
  const auto pairs = canonical_pairs(p);

  int worst = 0;
  double worst_value = 0.0;
  SymMatrix worst_matrix;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    auto matrix = build_lambda_sym(s, pairs[t]);
    const auto psd = is_psd(matrix, tol);
    if (!psd.psd && (worst == 0 || psd.min_eigenvalue < worst_value)) {
      worst = static_cast<int>(t) + 1;
      worst_value = psd.min_eigenvalue;
      worst_matrix = std::move(matrix);
    }
  }
  if (worst == 0) return std::nullopt;

  const auto system = sym_eigensystem(worst_matrix, tol);
  XWitness w;
  w.matrix_index = worst;
  w.min_eigenvalue = system.values.eigenvalues.front();
  std::vector<double> v(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) v[static_cast<std::size_t>(i)] = system.vectors(i, 0);
  w.eigenvector = v;

  std::vector<double> abs_v(v.size());
  std::transform(v.begin(), v.end(), abs_v.begin(), [](double e) { return std::abs(e); });
  w.quadratic_value = quadratic_form(worst_matrix, abs_v);
  std::sort(abs_v.begin(), abs_v.end(), std::greater<>());
  const SchmidtVector x(abs_v);
  w.x = abs_v;
  w.compatible_with_matrix = is_compatible(x, pairs[static_cast<std::size_t>(worst - 1)]);
  w.compatible_quadratic_value =
      quadratic_form(build_lambda_sym(s, compatible_pair_for(x)), x.values());
  return w;
}

}  // namespace abssep

namespace abssep {

AlignedState aligned_state(const Spectrum& s, std::span<const double> x) {
  const int m = s.dims().m();
  const int n = s.dims().n();
  const int total = m * n;
  if (static_cast<int>(x.size()) != m) throw Error(Errc::WrongLength, "aligned_state needs p entries");
  double norm = 0.0;
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::OutOfRange, "x entries must be >= 0");
    norm += v * v;
  }
  if (norm <= 0.0) throw Error(Errc::OutOfRange, "x must not be zero");
  norm = std::sqrt(norm);

  struct Vec {
    int a;
    int b;
    double sign;  // 0 for a product vector |a>, else (|a> + sign |b>)/sqrt 2
    double e;
  };
  std::vector<Vec> basis;
  basis.reserve(static_cast<std::size_t>(total));
  const auto at = [n](int i, int j) { return i * n + j; };
  for (int k = 0; k < m; ++k) basis.push_back({at(k, k), 0, 0.0, (x[k] / norm) * (x[k] / norm)});
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      const double xkl = x[k] * x[l] / (norm * norm);
      basis.push_back({at(k, l), at(l, k), 1.0, xkl});
      basis.push_back({at(k, l), at(l, k), -1.0, -xkl});
    }
  for (int k = 0; k < m; ++k)
    for (int l = m; l < n; ++l) basis.push_back({at(k, l), 0, 0.0, 0.0});

  std::stable_sort(basis.begin(), basis.end(), [](const Vec& u, const Vec& v) { return u.e < v.e; });

  ComplexMatrix rho(total);
  double overlap = 0.0;
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < total; ++i) {
    const auto& v = basis[static_cast<std::size_t>(i)];
    const double mu = s.lambda(i + 1);
    overlap += mu * v.e;
    if (v.sign == 0.0) {
      rho(v.a, v.a) += mu;
    } else {
      rho(v.a, v.a) += mu * h * h;
      rho(v.b, v.b) += mu * h * h;
      rho(v.a, v.b) += mu * v.sign * h * h;
      rho(v.b, v.a) += mu * v.sign * h * h;
    }
  }
  return AlignedState{DensityMatrix(s.dims(), std::move(rho), std::max(1e-10, s.sum_tolerance())),
                      overlap};
}

}  // namespace abssep
