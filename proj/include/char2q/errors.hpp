#pragma once

#include <stdexcept>
#include <string>

namespace char2q {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

#define CHAR2Q_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}   \
    }

// fields
CHAR2Q_DEFINE_ERROR(SyntaxError);
CHAR2Q_DEFINE_ERROR(PrecisionOverflow);
CHAR2Q_DEFINE_ERROR(DivisionByZero);
CHAR2Q_DEFINE_ERROR(DescriptorMismatch);
CHAR2Q_DEFINE_ERROR(PrecisionLoss);
CHAR2Q_DEFINE_ERROR(WindowTooLarge);

// quadspace
CHAR2Q_DEFINE_ERROR(DimensionMismatch);
CHAR2Q_DEFINE_ERROR(DependentConstraints);
CHAR2Q_DEFINE_ERROR(SingularAxis);

// quaternion
CHAR2Q_DEFINE_ERROR(PresentationMismatch);
CHAR2Q_DEFINE_ERROR(RetryBudgetExhausted);
CHAR2Q_DEFINE_ERROR(SearchExhausted);

// symbols / slots
CHAR2Q_DEFINE_ERROR(ConventionRequired);
CHAR2Q_DEFINE_ERROR(PreconditionViolated);
CHAR2Q_DEFINE_ERROR(SplitAmbient);
CHAR2Q_DEFINE_ERROR(InvalidInstance);

#undef CHAR2Q_DEFINE_ERROR

} // namespace char2q
