#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmh {

enum class ErrorKind {
    InvalidArgument,
    PrecisionExhausted,
    NotARing,
    DiscMismatch,
    ReduciblePoly,
    NotCM,
    NotPosDef,
    NotUnimodular,
    NoneFound,
    NoIndependentPair,
    FormulaViolated,
    RiemannRelationViolated,
    UndecidableAtPrecision,
    NoCandidate,
    InsufficientData,
    NoExactField,
    Io,
    Parse,
    Verify,
    Internal,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond)
        throw Error(kind, what);
}

}  // namespace cmh
