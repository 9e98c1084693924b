#include "abssep/error.hpp"

namespace abssep {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::BadDims: return "BadDims";
    case Errc::WrongLength: return "WrongLength";
    case Errc::NegativeEigenvalue: return "NegativeEigenvalue";
    case Errc::BadSum: return "BadSum";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnsupportedP: return "UnsupportedP";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::WrongDims: return "WrongDims";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace abssep
