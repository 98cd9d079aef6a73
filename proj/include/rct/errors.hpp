#pragma once

#include <stdexcept>
#include <string>

// Typed failure conditions for the whole library. Every throw carries a
// human-readable diagnostic; catch sites in the CLI map them to exit codes.
namespace rct {

#define RCT_DEFINE_ERROR(NAME)                                   \
  struct NAME : std::runtime_error {                             \
    explicit NAME(const std::string& msg)                        \
        : std::runtime_error(std::string(#NAME ": ") + msg) {}   \
  }

RCT_DEFINE_ERROR(ShapeMismatch);
RCT_DEFINE_ERROR(CommutatorTooLarge);
RCT_DEFINE_ERROR(DegenerateCombination);
RCT_DEFINE_ERROR(NotUnitary);
RCT_DEFINE_ERROR(NotHermitian);
RCT_DEFINE_ERROR(InvalidBanner);
RCT_DEFINE_ERROR(CoincidentPoints);
RCT_DEFINE_ERROR(InitNotFinite);
RCT_DEFINE_ERROR(ZeroAcceptance);
RCT_DEFINE_ERROR(EmptySamples);
RCT_DEFINE_ERROR(UnsupportedAlpha);
RCT_DEFINE_ERROR(DegenerateEigenvalues);
RCT_DEFINE_ERROR(UnstableDerivative);
RCT_DEFINE_ERROR(UnsupportedSize);
RCT_DEFINE_ERROR(NonFinitePoint);
RCT_DEFINE_ERROR(IoFailure);
RCT_DEFINE_ERROR(ConfigError);

#undef RCT_DEFINE_ERROR

}  // namespace rct
