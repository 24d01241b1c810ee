#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbrkit {

enum class ErrorCode {
    InvalidArgument,
    InvalidMesh,
    DegenerateHull,
    NonConvexInput,
    DegenerateCell,
    NoSolution,
    InvalidWidths,
    IoError,
    NoComposition,
    OffsetInVerticalMode,
    RowWidthMismatch,
    InvalidMagnetSpec,
    InvalidLayout,
    PumpNotOnBoundary,
    PumpNotOnOpenPort,
    ImageTooSmall,
    InvalidSamplingSpec,
    ControlRegionOutOfBounds,
    TestRegionOutOfBounds,
    UndefinedMeasure,
    InvalidP,
    InsufficientData,
    SingularSystem,
    UndefinedGoodness,
    OutOfRange,
    ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidMesh: return "InvalidMesh";
        case ErrorCode::DegenerateHull: return "DegenerateHull";
        case ErrorCode::NonConvexInput: return "NonConvexInput";
        case ErrorCode::DegenerateCell: return "DegenerateCell";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::InvalidWidths: return "InvalidWidths";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::NoComposition: return "NoComposition";
        case ErrorCode::OffsetInVerticalMode: return "OffsetInVerticalMode";
        case ErrorCode::RowWidthMismatch: return "RowWidthMismatch";
        case ErrorCode::InvalidMagnetSpec: return "InvalidMagnetSpec";
        case ErrorCode::InvalidLayout: return "InvalidLayout";
        case ErrorCode::PumpNotOnBoundary: return "PumpNotOnBoundary";
        case ErrorCode::PumpNotOnOpenPort: return "PumpNotOnOpenPort";
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::InvalidSamplingSpec: return "InvalidSamplingSpec";
        case ErrorCode::ControlRegionOutOfBounds: return "ControlRegionOutOfBounds";
        case ErrorCode::TestRegionOutOfBounds: return "TestRegionOutOfBounds";
        case ErrorCode::UndefinedMeasure: return "UndefinedMeasure";
        case ErrorCode::InvalidP: return "InvalidP";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::UndefinedGoodness: return "UndefinedGoodness";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the toolkit carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pbrkit
