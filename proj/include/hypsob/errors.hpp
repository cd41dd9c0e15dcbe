#pragma once

#include <stdexcept>
#include <string>

namespace hypsob {

/// Base of every library error. `code()` is the stable machine-readable tag
/// surfaced by the command-line front end.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define HYPSOB_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

HYPSOB_DEFINE_ERROR(SingularSystem);
HYPSOB_DEFINE_ERROR(SurplusNonzero);
HYPSOB_DEFINE_ERROR(DegreeExceeded);
HYPSOB_DEFINE_ERROR(IndexOutOfRange);
HYPSOB_DEFINE_ERROR(DimensionTooSmall);
HYPSOB_DEFINE_ERROR(ToleranceNotMet);
HYPSOB_DEFINE_ERROR(NonzeroResidual);
HYPSOB_DEFINE_ERROR(JetOrderTooLow);
HYPSOB_DEFINE_ERROR(DomainError);
HYPSOB_DEFINE_ERROR(UsageError);
HYPSOB_DEFINE_ERROR(VerificationFailure);

#undef HYPSOB_DEFINE_ERROR

}  // namespace hypsob
