#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace witnesslab {

enum class ErrorKind {
    NonHermitian,
    NotSymmetric,
    NotAntisymmetric,
    DimensionMismatch,
    BadDimension,
    DimensionCap,
    DegenerateTop,
    IndexOutOfRange,
    UnsupportedSpec,
    SpecMismatch,
    BadWeights,
    BadDecompositionSize,
    BadInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::DegenerateTop: return "DegenerateTop";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::BadDecompositionSize: return "BadDecompositionSize";
    case ErrorKind::BadInput: return "BadInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) throw Error(kind, what);
}

} // namespace witnesslab
