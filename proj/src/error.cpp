#include "diurnal/error.hpp"

namespace diurnal {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::AllMissing: return "AllMissing";
        case ErrorCode::Unresolvable: return "Unresolvable";
        case ErrorCode::BadCropSize: return "BadCropSize";
        case ErrorCode::NoFrames: return "NoFrames";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadTimestamp: return "BadTimestamp";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::KernelTooLarge: return "KernelTooLarge";
        case ErrorCode::AllForeground: return "AllForeground";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::NoCompleteDays: return "NoCompleteDays";
        case ErrorCode::NoSignal: return "NoSignal";
        case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
        case ErrorCode::BinNotFound: return "BinNotFound";
        case ErrorCode::NoPairs: return "NoPairs";
        case ErrorCode::BadParams: return "BadParams";
    }
    return "Unknown";
}

}  // namespace diurnal
