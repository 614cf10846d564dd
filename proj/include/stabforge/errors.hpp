#pragma once

#include <stdexcept>
#include <string>

namespace stabforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define STABFORGE_ERROR(Name)                                              \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

STABFORGE_ERROR(InvalidType);
STABFORGE_ERROR(InvalidField);
STABFORGE_ERROR(NoConsensus);
STABFORGE_ERROR(BadReduction);
STABFORGE_ERROR(DimensionMismatch);
STABFORGE_ERROR(FieldMismatch);
STABFORGE_ERROR(TwistInCharZero);
STABFORGE_ERROR(TooLarge);
STABFORGE_ERROR(ClosureFailure);
STABFORGE_ERROR(FieldTooSmall);
STABFORGE_ERROR(IntegralityFailure);
STABFORGE_ERROR(ParseError);
STABFORGE_ERROR(SkippedGuardRail);

#undef STABFORGE_ERROR

}  // namespace stabforge
