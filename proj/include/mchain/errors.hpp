#pragma once

#include <stdexcept>
#include <string>

namespace mchain {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// pl_core
struct NotMonotone : Error { using Error::Error; };
struct EndpointViolation : Error { using Error::Error; };
struct DuplicateParameter : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

// type_chains
struct DimensionMismatch : Error { using Error::Error; };
struct MissingPair : Error { using Error::Error; };
struct InconsistentAverages : Error { using Error::Error; };
struct InvalidChain : Error { using Error::Error; };

// indiscernibles
struct TooShort : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct DiagonalConditionFailed : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };

// distal_cells
struct BTooSmall : Error { using Error::Error; };

// seh
struct NotUltrametric : Error { using Error::Error; };
struct CutterContractViolation : Error { using Error::Error; };
struct FinderContractViolation : Error { using Error::Error; };
struct NoSuchN : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct ZeroElement : Error { using Error::Error; };

// serialization
struct ParseError : Error { using Error::Error; };

} // namespace mchain
