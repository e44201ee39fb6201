#pragma once

#include <stdexcept>
#include <string>

namespace dpio {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance / input validation
struct EmptyInstance : Error { using Error::Error; };
struct ProbabilityMismatch : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };

// Matrix / view geometry
struct OutOfBounds : Error { using Error::Error; };
struct IndivisibleDim : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct OverlappingViews : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };

// Cache simulation
struct BadGeometry : Error { using Error::Error; };
struct CacheTooSmall : Error { using Error::Error; };

// Grammar
struct SyntaxError : Error { using Error::Error; };
struct NotCNF : Error { using Error::Error; };

// Graph analyses
struct TooLarge : Error { using Error::Error; };
struct NotSingleCover : Error { using Error::Error; };

// Fitting
struct InsufficientData : Error { using Error::Error; };

}  // namespace dpio
