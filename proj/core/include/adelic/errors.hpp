#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

// Every library failure carries a stable code so the CLI and JSON reports can
// name it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define ADELIC_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

ADELIC_DEFINE_ERROR(ParseError)
ADELIC_DEFINE_ERROR(InvalidArgument)
ADELIC_DEFINE_ERROR(ReducibleField)
ADELIC_DEFINE_ERROR(PrecisionExhausted)
ADELIC_DEFINE_ERROR(RamifiedOrNonMonogenic)
ADELIC_DEFINE_ERROR(OutsideConvergenceDomain)
ADELIC_DEFINE_ERROR(NonRationalCompletion)
ADELIC_DEFINE_ERROR(DimensionMismatch)
ADELIC_DEFINE_ERROR(SingularNormSpec)
ADELIC_DEFINE_ERROR(ZeroBundle)
ADELIC_DEFINE_ERROR(NotASubspace)
ADELIC_DEFINE_ERROR(LengthMismatch)
ADELIC_DEFINE_ERROR(InexactMaxSlope)
ADELIC_DEFINE_ERROR(RankUncertified)
ADELIC_DEFINE_ERROR(HypothesisViolated)
ADELIC_DEFINE_ERROR(InvalidFrakE)
ADELIC_DEFINE_ERROR(KindMismatch)
ADELIC_DEFINE_ERROR(DeskScaleExceeded)
ADELIC_DEFINE_ERROR(DegenerateInstance)

#undef ADELIC_DEFINE_ERROR

}  // namespace adelic
