#pragma once

#include <stdexcept>

namespace mvinfo {

// Base class for every error thrown by this library.  Catching mvinfo::Error
// at a program boundary is enough to turn any misuse or bad input into a
// diagnostic instead of a crash.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MVINFO_DEFINE_ERROR(NAME) \
  struct NAME : Error {           \
    using Error::Error;           \
  }

// Distribution construction and manipulation.
MVINFO_DEFINE_ERROR(NegativeProbability);
MVINFO_DEFINE_ERROR(NotNormalized);
MVINFO_DEFINE_ERROR(MalformedState);
MVINFO_DEFINE_ERROR(EmptyKeepSet);
MVINFO_DEFINE_ERROR(UnknownVariable);
MVINFO_DEFINE_ERROR(ZeroProbabilityCondition);
MVINFO_DEFINE_ERROR(OverlappingBlocks);
MVINFO_DEFINE_ERROR(EmptyBlock);
MVINFO_DEFINE_ERROR(InvalidSplit);

// Measures and decomposition.
MVINFO_DEFINE_ERROR(InvalidArgument);
MVINFO_DEFINE_ERROR(UnsupportedSourceCount);
MVINFO_DEFINE_ERROR(DecompositionError);
MVINFO_DEFINE_ERROR(UnknownMeasure);
MVINFO_DEFINE_ERROR(InternalInconsistency);

// Model network generation.
MVINFO_DEFINE_ERROR(ParamOutOfRange);

// Event ingestion and rasters.
MVINFO_DEFINE_ERROR(NonPositiveBinWidth);
MVINFO_DEFINE_ERROR(DuplicateChannel);
MVINFO_DEFINE_ERROR(UnknownChannel);
MVINFO_DEFINE_ERROR(TooShort);
MVINFO_DEFINE_ERROR(EmptyInput);

// File handling.
MVINFO_DEFINE_ERROR(FileNotFound);
MVINFO_DEFINE_ERROR(ParseError);

#undef MVINFO_DEFINE_ERROR

}  // namespace mvinfo
