#pragma once

#include <stdexcept>
#include <string>

namespace conecert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct MalformedInput : Error { using Error::Error; };

// linear algebra
struct SingularMatrix : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// cones
struct WrongInertia : Error { using Error::Error; };
struct EigenvectorMismatch : Error { using Error::Error; };
struct DykstraNoConvergence : Error { using Error::Error; };
struct UnsupportedForEllipsoidal : Error { using Error::Error; };
struct NotSolid : Error { using Error::Error; };
struct NotPointed : Error { using Error::Error; };

// certification
struct PreconditionViolated : Error { using Error::Error; };
struct EpsilonUnderflow : Error { using Error::Error; };
struct InternalContradiction : Error { using Error::Error; };

// preservers
struct BasisDegenerate : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
// a sampled image broke a property the caller vouched for
struct AssertionFailed : Error { using Error::Error; };

// spectral
struct Overflow : Error { using Error::Error; };

}  // namespace conecert
