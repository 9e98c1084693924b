#pragma once

#include <stdexcept>
#include <string>

namespace abssep {

enum class Errc {
  BadDims,
  WrongLength,
  NegativeEigenvalue,
  BadSum,
  DimensionMismatch,
  UnsupportedP,
  ZeroVector,
  NoConvergence,
  IndexOutOfRange,
  WrongDims,
  OutOfRange,
  DimensionTooLarge,
  InternalInconsistency,
};

const char* to_string(Errc code) noexcept;

/// Exception carrying a machine-readable error code. Every failure raised by
/// the library is an `abssep::Error`.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace abssep
