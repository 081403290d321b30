#pragma once

#include <stdexcept>
#include <string>

namespace mhdchar {

/// Base class of every failure raised by the library. `kind()` carries the
/// stable error name that reports and the CLI print.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MHDCHAR_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

MHDCHAR_DEFINE_ERROR(NonAdmissibleState);
MHDCHAR_DEFINE_ERROR(ZeroFrequency);
MHDCHAR_DEFINE_ERROR(SingularTransform);
MHDCHAR_DEFINE_ERROR(MissingBoundary);
MHDCHAR_DEFINE_ERROR(DegenerateBranchMatching);
MHDCHAR_DEFINE_ERROR(CharacteristicBoundary);
MHDCHAR_DEFINE_ERROR(SpectralSplitFailure);
MHDCHAR_DEFINE_ERROR(DimensionMismatch);
MHDCHAR_DEFINE_ERROR(NoAdmissibleShock);
MHDCHAR_DEFINE_ERROR(RankDeficiency);
MHDCHAR_DEFINE_ERROR(ConfigError);

#undef MHDCHAR_DEFINE_ERROR

}  // namespace mhdchar
