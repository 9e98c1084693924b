#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace abssep {

using Complex = std::complex<double>;

/// Dense row-major real matrix.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int rows, int cols, double fill = 0.0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  RealMatrix transposed() const;

  bool operator==(const RealMatrix&) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Dense real symmetric matrix. `set` writes both mirrored entries, so the
/// stored matrix is exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int size);

  /// a + a^T.
  static SymMatrix symmetrized_sum(const RealMatrix& a);
  /// Copies a square matrix that is symmetric within `tol` (absolute), averaging
  /// mirrored entries.
  static SymMatrix from_symmetric(const RealMatrix& a, double tol = 1e-12);

  int size() const noexcept { return size_; }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(size_) +
                 static_cast<std::size_t>(c)];
  }
  void set(int r, int c, double v);

  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  double trace() const noexcept;
  RealMatrix dense() const;

  bool operator==(const SymMatrix&) const = default;

 private:
  int size_ = 0;
  std::vector<double> data_;
};

/// Dense row-major complex square matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(const std::vector<double>& diag);

  int dim() const noexcept { return dim_; }
  Complex& operator()(int r, int c) { return data_[index(r, c)]; }
  const Complex& operator()(int r, int c) const { return data_[index(r, c)]; }

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;
  /// max |a_rc - conj(a_cr)|.
  double hermiticity_error() const noexcept;
  double max_abs_diff(const ComplexMatrix& other) const;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(c);
  }

  int dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace abssep
