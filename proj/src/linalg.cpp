#include "abssep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

namespace {

constexpr double kOffDiagonalFactor = 1e-14;

double off_diagonal_norm(const RealMatrix& a) {
  double acc = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (r != c) acc += a(r, c) * a(r, c);
  return std::sqrt(acc);
}

// Diagonalizes `a` in place. When `v` is non-null it accumulates the rotations.
int jacobi(RealMatrix& a, RealMatrix* v, double norm, int sweep_limit) {
  const int n = a.rows();
  const double target = kOffDiagonalFactor * norm;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < sweep_limit; ++sweep) {
    if (off_diagonal_norm(a) <= target) return sweep;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Entries below rounding level of both diagonals are dropped outright.
        if (sweep > 3 && std::abs(apq) <= eps * std::abs(app) * 0.5 &&
            std::abs(apq) <= eps * std::abs(aqq) * 0.5) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double new_rp = arp - s * (arq + tau * arp);
          const double new_rq = arq + s * (arp - tau * arq);
          a(r, p) = new_rp;
          a(p, r) = new_rp;
          a(r, q) = new_rq;
          a(q, r) = new_rq;
        }
        if (v != nullptr) {
          for (int r = 0; r < n; ++r) {
            const double vrp = (*v)(r, p);
            const double vrq = (*v)(r, q);
            (*v)(r, p) = vrp - s * (vrq + tau * vrp);
            (*v)(r, q) = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) <= target) return sweep_limit;
  std::ostringstream msg;
  msg << "Jacobi iteration did not converge in " << sweep_limit << " sweeps";
  throw Error(Errc::NoConvergence, msg.str());
}

EigenSystem solve(const SymMatrix& a, const Tolerances& tol, bool want_vectors) {
  const int n = a.size();
  RealMatrix work = a.dense();
  RealMatrix vectors;
  if (want_vectors) {
    vectors = RealMatrix(n, n);
    for (int i = 0; i < n; ++i) vectors(i, i) = 1.0;
  }
  const int sweeps = jacobi(work, want_vectors ? &vectors : nullptr, a.frobenius_norm(),
                            tol.jacobi_sweep_limit);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return work(i, i) < work(j, j); });

  EigenSystem out;
  out.values.iterations = sweeps;
  out.values.converged = true;
  for (int i : order) out.values.eigenvalues.push_back(work(i, i));
  if (want_vectors) {
    out.vectors = RealMatrix(n, n);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) out.vectors(r, j) = vectors(r, order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace

void Tolerances::validate() const {
  if (!(psd_abs > 0.0) || !(psd_rel > 0.0) || jacobi_sweep_limit <= 0) {
    throw Error(Errc::OutOfRange, "tolerances must be positive");
  }
}

EigenResult sym_eigenvalues(const SymMatrix& a, const Tolerances& tol) {
  return solve(a, tol, false).values;
}

EigenSystem sym_eigensystem(const SymMatrix& a, const Tolerances& tol) {
  return solve(a, tol, true);
}

double psd_threshold(const SymMatrix& a, const Tolerances& tol) {
  return tol.psd_abs + tol.psd_rel * a.max_abs();
}

PsdResult is_psd(const SymMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) return {true, 0.0};
  const auto eig = sym_eigenvalues(a, tol);
  const double min_eig = eig.eigenvalues.front();
  return {min_eig >= -psd_threshold(a, tol), min_eig};
}

bool row_diagonally_dominant(const SymMatrix& a, int row) {
  if (row < 0 || row >= a.size()) {
    std::ostringstream msg;
    msg << "row " << row << " outside a " << a.size() << "x" << a.size() << " matrix";
    throw Error(Errc::IndexOutOfRange, msg.str());
  }
  double off = 0.0;
  for (int c = 0; c < a.size(); ++c)
    if (c != row) off += std::abs(a(row, c));
  return std::abs(a(row, row)) >= off;
}

double all_ones_quadratic(const SymMatrix& a) {
  double acc = 0.0;
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) acc += a(r, c);
  return acc;
}

double quadratic_form(const SymMatrix& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.size())) {
    throw Error(Errc::DimensionMismatch, "vector length differs from matrix size");
  }
  double acc = 0.0;
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c)
      acc += x[static_cast<std::size_t>(r)] * a(r, c) * x[static_cast<std::size_t>(c)];
  return acc;
}

SymMatrix real_embedding(const ComplexMatrix& h) {
  const int d = h.dim();
  SymMatrix out(2 * d);
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) {
      // Average mirrored entries so rounding asymmetry cannot leak in.
      const Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
      out.set(r, c, z.real());
      out.set(d + r, d + c, z.real());
      out.set(d + r, c, z.imag());
      out.set(d + c, r, -z.imag());
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, const Tolerances& tol) {
  const auto doubled = sym_eigenvalues(real_embedding(h), tol).eigenvalues;
  std::vector<double> out;
  out.reserve(doubled.size() / 2);
  for (std::size_t i = 0; i < doubled.size(); i += 2) out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return out;
}

double hermitian_min_eigenvalue(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.dim() == 0) return 0.0;
  return sym_eigenvalues(real_embedding(h), tol).eigenvalues.front();
}

}  // namespace abssep
