#include "nowcast/error.hpp"

namespace nowcast {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::BadQuarterLabel: return "BadQuarterLabel";
    case ErrorCode::IndexGap: return "IndexGap";
    case ErrorCode::DuplicateQuarter: return "DuplicateQuarter";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::NonPositiveCpi: return "NonPositiveCpi";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::BaseOutOfRange: return "BaseOutOfRange";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::EmptyColumnSet: return "EmptyColumnSet";
    case ErrorCode::BoundaryOutOfRange: return "BoundaryOutOfRange";
    case ErrorCode::BadScenario: return "BadScenario";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::BadHyperparameter: return "BadHyperparameter";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::FeatureMismatch: return "FeatureMismatch";
    case ErrorCode::BadModelFile: return "BadModelFile";
    case ErrorCode::TooShortForFolds: return "TooShortForFolds";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NonPositiveMse: return "NonPositiveMse";
    case ErrorCode::TooFewMembers: return "TooFewMembers";
    case ErrorCode::MemberMismatch: return "MemberMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroActualForMape: return "ZeroActualForMape";
    case ErrorCode::ZeroActual: return "ZeroActual";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadDgp: return "BadDgp";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

}  // namespace nowcast
