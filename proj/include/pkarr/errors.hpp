// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// input/usage problems -> 2, broken internal invariants -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace pkarr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / usage errors.
struct ParseError : Error { using Error::Error; };
struct SpecMismatch : Error { using Error::Error; };
struct InversionOfZero : Error { using Error::Error; };
struct ProportionalLines : Error { using Error::Error; };
struct DuplicateLine : Error { using Error::Error; };
struct UnknownEntry : Error { using Error::Error; };
struct ParamOutOfRange : Error { using Error::Error; };
struct IncompleteData : Error { using Error::Error; };
struct InadmissibleWeights : Error { using Error::Error; };
struct WeightsMissing : Error { using Error::Error; };
struct UnknownCurveReference : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };

// A computation produced something that should be impossible.
struct InternalError : Error { using Error::Error; };

}  // namespace pkarr
