#include "abssep/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "abssep/error.hpp"

namespace abssep {

RealMatrix::RealMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

RealMatrix RealMatrix::transposed() const {
  RealMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

SymMatrix::SymMatrix(int size)
    : size_(size), data_(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}

SymMatrix SymMatrix::symmetrized_sum(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  SymMatrix out(a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = r; c < a.cols(); ++c) out.set(r, c, a(r, c) + a(c, r));
  return out;
}

SymMatrix SymMatrix::from_symmetric(const RealMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  SymMatrix out(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = r; c < a.cols(); ++c) {
      if (std::abs(a(r, c) - a(c, r)) > tol) {
        throw Error(Errc::DimensionMismatch, "matrix is not symmetric");
      }
      out.set(r, c, 0.5 * (a(r, c) + a(c, r)));
    }
  }
  return out;
}

void SymMatrix::set(int r, int c, double v) {
  const auto n = static_cast<std::size_t>(size_);
  data_[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = v;
  data_[static_cast<std::size_t>(c) * n + static_cast<std::size_t>(r)] = v;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_norm() const noexcept {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return std::sqrt(acc);
}

double SymMatrix::trace() const noexcept {
  double acc = 0.0;
  for (int i = 0; i < size_; ++i) acc += (*this)(i, i);
  return acc;
}

RealMatrix SymMatrix::dense() const {
  RealMatrix out(size_, size_);
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c) out(r, c) = (*this)(r, c);
  return out;
}

ComplexMatrix::ComplexMatrix(int dim)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& diag) {
  ComplexMatrix out(static_cast<int>(diag.size()));
  for (int i = 0; i < out.dim(); ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex acc{};
  for (int i = 0; i < dim_; ++i) acc += data_[index(i, i)];
  return acc;
}

double ComplexMatrix::hermiticity_error() const noexcept {
  double err = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return err;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) throw Error(Errc::DimensionMismatch, "matrix sizes differ");
  double err = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    err = std::max(err, std::abs(data_[i] - other.data_[i]));
  return err;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "matrix sizes differ");
  const int d = a.dim();
  ComplexMatrix out(d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (int c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

}  // namespace abssep
