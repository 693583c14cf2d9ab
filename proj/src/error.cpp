#include "cmh/error.hpp"

namespace cmh {

std::string_view error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::NotARing: return "not-a-ring";
    case ErrorKind::DiscMismatch: return "disc-mismatch";
    case ErrorKind::ReduciblePoly: return "reducible-poly";
    case ErrorKind::NotCM: return "not-cm";
    case ErrorKind::NotPosDef: return "not-posdef";
    case ErrorKind::NotUnimodular: return "not-unimodular";
    case ErrorKind::NoneFound: return "none-found";
    case ErrorKind::NoIndependentPair: return "no-independent-pair";
    case ErrorKind::FormulaViolated: return "formula-violated";
    case ErrorKind::RiemannRelationViolated: return "riemann-relation-violated";
    case ErrorKind::UndecidableAtPrecision: return "undecidable-at-precision";
    case ErrorKind::NoCandidate: return "no-candidate";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::NoExactField: return "no-exact-field";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Verify: return "verify";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace cmh
