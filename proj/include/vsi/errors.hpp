#pragma once

#include <stdexcept>
#include <string>

namespace vsi {

/// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define VSI_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    };

VSI_DEFINE_ERROR(ParseError)
VSI_DEFINE_ERROR(OrientedCycleError)
VSI_DEFINE_ERROR(DimensionMismatch)
VSI_DEFINE_ERROR(UnknownVertex)
VSI_DEFINE_ERROR(OverflowError)
VSI_DEFINE_ERROR(NegativeDimension)
VSI_DEFINE_ERROR(FieldMismatch)
VSI_DEFINE_ERROR(QuiverMismatch)
VSI_DEFINE_ERROR(InternalError)
VSI_DEFINE_ERROR(SplitFailure)
VSI_DEFINE_ERROR(NonSquareWeight)
VSI_DEFINE_ERROR(ShapeMismatch)
VSI_DEFINE_ERROR(DecompositionUnstable)
VSI_DEFINE_ERROR(ZeroVector)
VSI_DEFINE_ERROR(NotDynkin)
VSI_DEFINE_ERROR(InvariantViolation)
VSI_DEFINE_ERROR(NotASimplex)
VSI_DEFINE_ERROR(ZeroCoefficients)
VSI_DEFINE_ERROR(EmptyLabel)
VSI_DEFINE_ERROR(UnsupportedDimension)

#undef VSI_DEFINE_ERROR

} // namespace vsi
