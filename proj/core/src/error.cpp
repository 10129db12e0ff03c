#include "tdanorms/error.hpp"

namespace tdanorms {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::NonPositivePrice: return "NonPositivePrice";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::EmptyIntersection: return "EmptyIntersection";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::MisalignedMonths: return "MisalignedMonths";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NoFullWindow: return "NoFullWindow";
        case ErrorCode::EmptySlice: return "EmptySlice";
        case ErrorCode::UnsortedFiltration: return "UnsortedFiltration";
        case ErrorCode::MissingFace: return "MissingFace";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::TooFewObservations: return "TooFewObservations";
        case ErrorCode::InvalidDistanceMatrix: return "InvalidDistanceMatrix";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow:
        case ErrorCode::NonPositivePrice:
        case ErrorCode::DuplicateDate:
        case ErrorCode::EmptyFile:
        case ErrorCode::EmptyIntersection:
        case ErrorCode::MissingColumn:
        case ErrorCode::MisalignedMonths:
        case ErrorCode::InvalidConfig:
        case ErrorCode::IoError:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error Error::with_stage(std::string stage) const {
    Error annotated = *this;
    annotated.stage_ = std::move(stage);
    return annotated;
}

}  // namespace tdanorms
