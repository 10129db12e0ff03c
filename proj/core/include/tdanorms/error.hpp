#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdanorms {

enum class ErrorCode {
    // input errors
    MalformedRow,
    NonPositivePrice,
    DuplicateDate,
    EmptyFile,
    EmptyIntersection,
    MissingColumn,
    MisalignedMonths,
    InvalidConfig,
    IoError,
    // numerical failures
    TooShort,
    NoFullWindow,
    EmptySlice,
    UnsortedFiltration,
    MissingFace,
    ZeroVariance,
    LengthMismatch,
    RankDeficient,
    TooFewObservations,
    InvalidDistanceMatrix,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by bad inputs or configuration, false for
// numerical failures inside a stage.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

    // Pipeline stage that raised the error ("ingest", "cloud", ...); empty
    // until annotated by the orchestrator.
    const std::string& stage() const noexcept { return stage_; }

    Error with_stage(std::string stage) const;

private:
    ErrorCode code_;
    std::string stage_;
};

}  // namespace tdanorms
