#include "ffh/error.hpp"

namespace ffh {

std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotSquareFree: return "NotSquareFree";
    case ErrorKind::RealField: return "RealField";
    case ErrorKind::DegenerateConstantField: return "DegenerateConstantField";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InertCaseUnsupported: return "InertCaseUnsupported";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NonSplitPrime: return "NonSplitPrime";
    case ErrorKind::PDividesN: return "PDividesN";
    case ErrorKind::NotSquareFreeLevel: return "NotSquareFreeLevel";
    case ErrorKind::NoWitnessInHorizon: return "NoWitnessInHorizon";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ffh
