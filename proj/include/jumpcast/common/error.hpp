#pragma once

#include <stdexcept>
#include <string>

namespace jumpcast {

enum class Errc {
    UnknownOrderId,
    OverRemoval,
    EmptySide,
    InvariantViolation,
    NonPositivePrice,
    InsufficientHistory,
    ZeroVolatility,
    SeriesTooShort,
    StreamMisalignment,
    MissingLabel,
    ShiftTooLarge,
    OverlapViolation,
    ShapeMismatch,
    KernelTooLarge,
    LengthMismatch,
    MissingCell,
    UnsupportedArchitecture,
    DivergenceDetected,
    BadFile,
    BadConfig,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnknownOrderId: return "UnknownOrderId";
        case Errc::OverRemoval: return "OverRemoval";
        case Errc::EmptySide: return "EmptySide";
        case Errc::InvariantViolation: return "InvariantViolation";
        case Errc::NonPositivePrice: return "NonPositivePrice";
        case Errc::InsufficientHistory: return "InsufficientHistory";
        case Errc::ZeroVolatility: return "ZeroVolatility";
        case Errc::SeriesTooShort: return "SeriesTooShort";
        case Errc::StreamMisalignment: return "StreamMisalignment";
        case Errc::MissingLabel: return "MissingLabel";
        case Errc::ShiftTooLarge: return "ShiftTooLarge";
        case Errc::OverlapViolation: return "OverlapViolation";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::KernelTooLarge: return "KernelTooLarge";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::MissingCell: return "MissingCell";
        case Errc::UnsupportedArchitecture: return "UnsupportedArchitecture";
        case Errc::DivergenceDetected: return "DivergenceDetected";
        case Errc::BadFile: return "BadFile";
        case Errc::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace jumpcast
