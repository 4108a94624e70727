#include "mvent/error.hpp"

namespace mvent {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kEmptySpace: return "EmptySpace";
        case ErrorCode::kShapeMismatch: return "ShapeMismatch";
        case ErrorCode::kSymmetryViolation: return "SymmetryViolation";
        case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
        case ErrorCode::kNegativeDistance: return "NegativeDistance";
        case ErrorCode::kTriangleViolation: return "TriangleViolation";
        case ErrorCode::kNotSeparating: return "NotSeparating";
        case ErrorCode::kEmptySet: return "EmptySet";
        case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::kEmptyImage: return "EmptyImage";
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kNotACover: return "NotACover";
        case ErrorCode::kInfeasible: return "Infeasible";
        case ErrorCode::kNotASelection: return "NotASelection";
        case ErrorCode::kOrbitCapExceeded: return "OrbitCapExceeded";
        case ErrorCode::kTupleBudgetExceeded: return "TupleBudgetExceeded";
        case ErrorCode::kExactSizeLimit: return "ExactSizeLimit";
        case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
        case ErrorCode::kUnknownName: return "UnknownName";
        case ErrorCode::kParseError: return "ParseError";
        case ErrorCode::kResolutionError: return "ResolutionError";
        case ErrorCode::kValidationError: return "ValidationError";
    }
    return "Unknown";
}

ErrorClass error_class(ErrorCode code) {
    switch (code) {
        case ErrorCode::kParseError:
            return ErrorClass::kParse;
        case ErrorCode::kOrbitCapExceeded:
        case ErrorCode::kTupleBudgetExceeded:
        case ErrorCode::kExactSizeLimit:
        case ErrorCode::kSpaceTooLarge:
            return ErrorClass::kResource;
        default:
            return ErrorClass::kValidation;
    }
}

}  // namespace mvent
