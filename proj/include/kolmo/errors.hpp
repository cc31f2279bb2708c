// errors.hpp - exception types shared by every kolmo module.
//
// Input problems derive from ValidationError (the CLI maps them to exit
// code 1); anything else escaping a command is an internal error.
#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

#define KOLMO_DEFINE_ERROR(Name)                                \
    class Name : public ValidationError {                       \
    public:                                                     \
        explicit Name(const std::string& what)                  \
            : ValidationError(#Name ": " + what) {}             \
    }

KOLMO_DEFINE_ERROR(NegativeWeight);
KOLMO_DEFINE_ERROR(NotNormalized);
KOLMO_DEFINE_ERROR(DuplicateAtom);
KOLMO_DEFINE_ERROR(LengthMismatch);
KOLMO_DEFINE_ERROR(DomainMismatch);
KOLMO_DEFINE_ERROR(ZeroProbabilityCondition);
KOLMO_DEFINE_ERROR(RangeViolation);
KOLMO_DEFINE_ERROR(DimensionMismatch);
KOLMO_DEFINE_ERROR(InvalidProjector);
KOLMO_DEFINE_ERROR(InvalidSubspace);
KOLMO_DEFINE_ERROR(InconsistentMarginals);
KOLMO_DEFINE_ERROR(ConfigError);
KOLMO_DEFINE_ERROR(FormatError);

#undef KOLMO_DEFINE_ERROR

}  // namespace kolmo
