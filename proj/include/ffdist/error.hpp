#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffdist {

enum class ErrorKind {
    InvalidArgument,
    NotPrime,
    EvenCharacteristic,
    ReducibleModulus,
    FieldTooLarge,
    DivisionByZero,
    DimensionMismatch,
    FieldMismatch,
    NotSymmetric,
    Degenerate,
    NotIsometric,
    TooFewPoints,
    InvalidPointSet,
    NotModular,
    ZeroScale,
    NotEquilateral,
    BadDistanceValue,
    TooSmall,
    TooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Precondition and domain failures raised by every module.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ffdist
