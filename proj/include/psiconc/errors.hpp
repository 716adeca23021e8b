#pragma once

#include <stdexcept>
#include <string>

namespace psiconc {

/// Base of every library error. Input-type errors derive from InputError,
/// internal numeric breakdowns from NumericFailure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericFailure : public Error {
public:
    using Error::Error;
};

#define PSICONC_INPUT_ERROR(Name)             \
    class Name : public InputError {          \
    public:                                   \
        explicit Name(const std::string& m)   \
            : InputError(#Name ": " + m) {}   \
    }

PSICONC_INPUT_ERROR(DomainError);
PSICONC_INPUT_ERROR(RangeError);
PSICONC_INPUT_ERROR(InvalidArgument);
PSICONC_INPUT_ERROR(InvalidParameters);
PSICONC_INPUT_ERROR(InsufficientData);
PSICONC_INPUT_ERROR(DegenerateData);
PSICONC_INPUT_ERROR(EmptyGrid);
PSICONC_INPUT_ERROR(EmptySample);
PSICONC_INPUT_ERROR(UnknownFamily);
PSICONC_INPUT_ERROR(NonPositiveResponse);
PSICONC_INPUT_ERROR(RankDeficient);
PSICONC_INPUT_ERROR(NotSpd);
PSICONC_INPUT_ERROR(DimensionMismatch);

#undef PSICONC_INPUT_ERROR

/// CSV/flag parsing failure. `line` is 1-based; 0 when not tied to a line.
class ParseError : public InputError {
public:
    ParseError(const std::string& m, std::size_t line = 0)
        : InputError("ParseError: " + m), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace psiconc
