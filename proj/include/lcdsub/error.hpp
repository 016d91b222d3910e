#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcdsub {

enum class ErrorCode {
    NotPrime,
    FieldTooLarge,
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    Overflow,
    AmbientMismatch,
    InternalInconsistency,
    NotLCD,
    EmptyCode,
    DegenerateCode,
    PairBudgetExceeded,
    NotLCDCode,
    RankDeficient,
    NotAPartition,
    NotSymmetric,
    MissingIdentity,
    NotClosed,
    IndexOutOfRange,
    NotEquitable,
    NonIntegralQuotient,
    TooManyClasses,
    Disconnected,
    NotDRG,
    NotAnAutomorphism,
    GramFailure,
    BadAlphabet,
    NotSquareOrder,
    OrderTooLarge,
    NotPerfectSquare,
    BudgetExhausted,
    NotRegular,
    NotBushType,
    OddN,
    NotUnbiased,
    DimensionBlowup,
    ZeroAlpha,
    UnequalCells,
    DivisibilityFails,
    IdentityFails,
    HypothesisFailed,
    EmptyAlgebra,
    InvalidSpec,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. `witness` carries the offending indices or values
/// in a short human-readable form (empty when there is nothing to point at).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string witness = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    ErrorCode code_;
    std::string witness_;
};

}  // namespace lcdsub
