#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abssep/linalg.hpp"
#include "abssep/matricization.hpp"
#include "abssep/matrix.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

class Rng;

/// Largest m*n accepted by the random-unitary falsifier.
inline constexpr int kMaxOracleTotal = 36;

/// Hermitian mn x mn density matrix. First tensor factor is the
/// m-dimensional subsystem.
class DensityMatrix {
 public:
  /// Checks size, Hermiticity (1e-12) and |tr - 1| <= trace_tol.
  DensityMatrix(Dims dims, ComplexMatrix entries, double trace_tol = 1e-10);

  const Dims& dims() const noexcept { return dims_; }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  int dim() const noexcept { return entries_.dim(); }

 private:
  Dims dims_;
  ComplexMatrix entries_;
};

/// diag(lambda_1, ..., lambda_mn). Trace tolerance follows the spectrum's own.
DensityMatrix embed_diag(const Spectrum& s);

/// Haar-distributed unitary: QR of a complex Gaussian matrix, columns
/// rephased by R's diagonal.
ComplexMatrix haar_unitary(int d, std::uint64_t seed);
ComplexMatrix haar_unitary(int d, Rng& rng);

/// out[(i,l),(j,k)] = in[(i,k),(j,l)], transposing the second factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims);
ComplexMatrix partial_transpose(const DensityMatrix& rho);

/// U diag(lambda) U^dagger.
ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> lambda);

struct FalsifierWitness {
  int trial = 0;
  double min_pt_eigenvalue = 0.0;

  bool operator==(const FalsifierWitness&) const = default;
};

struct FalsifierResult {
  int trials_run = 0;
  double smallest_pt_eigenvalue = 0.0;
  std::optional<FalsifierWitness> witness;

  bool operator==(const FalsifierResult&) const = default;
};

/// Draws U per trial from stream (seed, trial) and checks the partial
/// transpose of U diag(lambda) U^dagger. Stops at the first eigenvalue below
/// -(psd_abs + psd_rel * max|entry|), unless `stop_at_first` is false, in
/// which case all trials run and the witness is the first one found.
/// Throws DimensionTooLarge when mn > 36.
FalsifierResult random_unitary_falsifier(const Spectrum& s, int trials, std::uint64_t seed,
                                         const Tolerances& tol = {}, bool stop_at_first = true);

struct XWitness {
  /// 1-based index into canonical_pairs(p) of the most negative matrix.
  int matrix_index = 0;
  double min_eigenvalue = 0.0;
  /// Unit eigenvector of that eigenvalue, in matrix coordinates.
  std::vector<double> eigenvector;
  /// |eigenvector| sorted descending.
  std::vector<double> x;
  /// |v|^T Lambda_t |v| in the original coordinates.
  double quadratic_value = 0.0;
  /// Whether sorted x is compatible with the matrix's own ordering pair.
  bool compatible_with_matrix = false;
  /// x^T Lambda(compatible_pair_for(x)) x.
  double compatible_quadratic_value = 0.0;
};

/// Eigenvector certificate for a non-PSD canonical matricization; nullopt when
/// all are PSD. Throws UnsupportedP for p >= 5.
std::optional<XWitness> x_witness(const Spectrum& s, const Tolerances& tol = {});

struct AlignedState {
  DensityMatrix state;
  /// <psi| rho^Gamma |psi> for psi = sum_k x_k |kk> (x normalized).
  double overlap = 0.0;
};

/// State with spectrum `s` whose eigenvectors diagonalize the partial
/// transpose of |psi><psi|, psi = sum_k x_k |kk>, with the largest lambda on
/// the most negative of those eigenvalues. A negative overlap certifies that
/// the spectrum is not absolutely PPT. `x` must have p nonnegative entries,
/// not all zero.
AlignedState aligned_state(const Spectrum& s, std::span<const double> x);

}  // namespace abssep
