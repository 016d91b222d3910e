#include "lcdsub/error.hpp"

namespace lcdsub {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::NotLCD: return "NotLCD";
        case ErrorCode::EmptyCode: return "EmptyCode";
        case ErrorCode::DegenerateCode: return "DegenerateCode";
        case ErrorCode::PairBudgetExceeded: return "PairBudgetExceeded";
        case ErrorCode::NotLCDCode: return "NotLCDCode";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NotAPartition: return "NotAPartition";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::MissingIdentity: return "MissingIdentity";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NotEquitable: return "NotEquitable";
        case ErrorCode::NonIntegralQuotient: return "NonIntegralQuotient";
        case ErrorCode::TooManyClasses: return "TooManyClasses";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NotDRG: return "NotDRG";
        case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
        case ErrorCode::GramFailure: return "GramFailure";
        case ErrorCode::BadAlphabet: return "BadAlphabet";
        case ErrorCode::NotSquareOrder: return "NotSquareOrder";
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::NotPerfectSquare: return "NotPerfectSquare";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotBushType: return "NotBushType";
        case ErrorCode::OddN: return "OddN";
        case ErrorCode::NotUnbiased: return "NotUnbiased";
        case ErrorCode::DimensionBlowup: return "DimensionBlowup";
        case ErrorCode::ZeroAlpha: return "ZeroAlpha";
        case ErrorCode::UnequalCells: return "UnequalCells";
        case ErrorCode::DivisibilityFails: return "DivisibilityFails";
        case ErrorCode::IdentityFails: return "IdentityFails";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::EmptyAlgebra: return "EmptyAlgebra";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), witness_(std::move(witness)) {}

}  // namespace lcdsub
