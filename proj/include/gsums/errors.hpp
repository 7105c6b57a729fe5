#pragma once

#include <stdexcept>
#include <string>

namespace gsums {

// Base for all library errors. `kind()` is stable and machine-checkable;
// what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GSUMS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& msg = "") : Error(#Name, msg) {} \
    }

GSUMS_DEFINE_ERROR(CapExceeded);
GSUMS_DEFINE_ERROR(Overflow);
GSUMS_DEFINE_ERROR(AmbiguousSign);
GSUMS_DEFINE_ERROR(NotWellDefined);
GSUMS_DEFINE_ERROR(NotTwoLinear);
GSUMS_DEFINE_ERROR(NotHomomorphism);
GSUMS_DEFINE_ERROR(NotQuadratic);
GSUMS_DEFINE_ERROR(NotTame);
GSUMS_DEFINE_ERROR(PsiNonzeroOnK);
GSUMS_DEFINE_ERROR(NoPhaseFound);
GSUMS_DEFINE_ERROR(TheoremViolated);
GSUMS_DEFINE_ERROR(SingularMatrix);
GSUMS_DEFINE_ERROR(NotEven);
GSUMS_DEFINE_ERROR(NotCharacteristic);
GSUMS_DEFINE_ERROR(OddModulus);
GSUMS_DEFINE_ERROR(EvenAlexander);
GSUMS_DEFINE_ERROR(DetDivisibleByP);
GSUMS_DEFINE_ERROR(NotCoprime);
GSUMS_DEFINE_ERROR(MalformedDecomposition);
GSUMS_DEFINE_ERROR(ParseError);

#undef GSUMS_DEFINE_ERROR

} // namespace gsums
