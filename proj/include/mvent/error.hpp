#ifndef MVENT_ERROR_HPP
#define MVENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mvent {

enum class ErrorCode {
    kEmptySpace,
    kShapeMismatch,
    kSymmetryViolation,
    kNonzeroDiagonal,
    kNegativeDistance,
    kTriangleViolation,
    kNotSeparating,
    kEmptySet,
    kIndexOutOfRange,
    kEmptyImage,
    kLengthMismatch,
    kInvalidArgument,
    kNotACover,
    kInfeasible,
    kNotASelection,
    kOrbitCapExceeded,
    kTupleBudgetExceeded,
    kExactSizeLimit,
    kSpaceTooLarge,
    kUnknownName,
    kParseError,
    kResolutionError,
    kValidationError,
};

const char* error_code_name(ErrorCode code);

// Broad class of an error, used for CLI exit codes and the C status codes.
enum class ErrorClass { kParse, kValidation, kResource };

ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Raised by orbit enumeration; carries how many orbits were produced before
// giving up.
class OrbitCapError : public Error {
public:
    OrbitCapError(std::size_t partial_count, std::size_t cap)
        : Error(ErrorCode::kOrbitCapExceeded,
                "orbit enumeration exceeded cap " + std::to_string(cap) + " (partial count " +
                    std::to_string(partial_count) + ")"),
          partial_count_(partial_count) {}

    std::size_t partial_count() const { return partial_count_; }

private:
    std::size_t partial_count_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace mvent

#endif
