#pragma once

#include <stdexcept>
#include <string>

namespace diurnal {

// Every failure mode exposed by the library. The CLI maps these onto exit
// codes, so codes are part of the public contract.
enum class ErrorCode {
    AllMissing,
    Unresolvable,
    BadCropSize,
    NoFrames,
    DimensionMismatch,
    BadTimestamp,
    ParseError,
    KernelTooLarge,
    AllForeground,
    OutOfRange,
    TooFewSamples,
    NoCompleteDays,
    NoSignal,
    NonPositiveFrequency,
    BinNotFound,
    NoPairs,
    BadParams,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace diurnal
