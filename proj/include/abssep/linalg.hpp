#pragma once

#include <span>
#include <vector>

#include "abssep/matrix.hpp"

namespace abssep {

struct Tolerances {
  double psd_abs = 1e-10;
  /// Scaled by the largest |entry| of the matrix under test.
  double psd_rel = 1e-8;
  int jacobi_sweep_limit = 64;

  /// Throws OutOfRange unless every field is positive.
  void validate() const;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  int iterations = 0;               // sweeps
  bool converged = false;
};

struct EigenSystem {
  EigenResult values;
  RealMatrix vectors;  // column j pairs with values.eigenvalues[j]
};

/// Cyclic Jacobi, row-by-row sweep order. Stops once the off-diagonal
/// Frobenius norm drops to 1e-14 * ||a||_F. Throws NoConvergence after
/// `tol.jacobi_sweep_limit` sweeps.
EigenResult sym_eigenvalues(const SymMatrix& a, const Tolerances& tol = {});
EigenSystem sym_eigensystem(const SymMatrix& a, const Tolerances& tol = {});

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// psd_abs + psd_rel * max|a_ij|.
double psd_threshold(const SymMatrix& a, const Tolerances& tol);

PsdResult is_psd(const SymMatrix& a, const Tolerances& tol = {});

/// |a_rr| >= sum_{j != r} |a_rj|. Row is 0-based.
bool row_diagonally_dominant(const SymMatrix& a, int row);

/// 1^T a 1.
double all_ones_quadratic(const SymMatrix& a);

double quadratic_form(const SymMatrix& a, std::span<const double> x);

/// Eigenvalues of a Hermitian matrix, ascending, each listed once. Computed
/// from the 2d x 2d real embedding [[Re, -Im], [Im, Re]].
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, const Tolerances& tol = {});
double hermitian_min_eigenvalue(const ComplexMatrix& h, const Tolerances& tol = {});

/// The real symmetric embedding itself; its spectrum is that of h, doubled.
SymMatrix real_embedding(const ComplexMatrix& h);

}  // namespace abssep
