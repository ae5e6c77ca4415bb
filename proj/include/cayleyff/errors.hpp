#pragma once

#include <stdexcept>
#include <string>

namespace cayleyff {

// Error taxonomy. `code()` is a stable identifier used by the CLI to map
// failures onto exit codes: input/usage errors exit 2, violated mathematical
// assertions (theorem-violation class) exit 1.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

struct InputError : Error {
    using Error::Error;
};

// Internal invariants and numerically verified theorems; never a usage problem.
struct AssertionError : Error {
    using Error::Error;
};

inline InputError not_prime(const std::string& what = "composite") { return {"NotPrime", what}; }
inline InputError not_prime(unsigned long long p) { return not_prime("p = " + std::to_string(p)); }
inline InputError reducible_modulus(const std::string& what = "") { return {"ReducibleModulus", what}; }
inline InputError degree_mismatch(const std::string& what = "") { return {"DegreeMismatch", what}; }
inline InputError not_monic(const std::string& what = "") { return {"NotMonic", what}; }
inline InputError degree_too_small(const std::string& what = "") { return {"DegreeTooSmall", what}; }
inline InputError zero_polynomial(const std::string& what = "") { return {"ZeroPolynomial", what}; }
inline InputError division_by_zero(const std::string& what = "") { return {"DivisionByZero", what}; }
inline InputError field_mismatch(const std::string& what = "") { return {"FieldMismatch", what}; }
inline InputError zero_element(const std::string& what = "") { return {"ZeroElement", what}; }
inline InputError size_guard(const std::string& what = "") { return {"SizeGuard", what}; }
inline InputError bad_hint(const std::string& what = "") { return {"BadHint", what}; }
inline InputError give_up(const std::string& what = "") { return {"GiveUp", what}; }
inline InputError ell_does_not_divide(const std::string& what = "") { return {"EllDoesNotDivide", what}; }
inline InputError budget_exceeded(const std::string& what = "") { return {"BudgetExceeded", what}; }
inline InputError wrong_kind(const std::string& what = "") { return {"WrongKind", what}; }
inline InputError unknown_format(const std::string& what = "") { return {"UnknownFormat", what}; }
inline InputError not_applicable(const std::string& what = "") { return {"NotApplicable", what}; }
inline InputError parse_error(const std::string& what = "") { return {"ParseError", what}; }

inline AssertionError collision_detected(const std::string& what = "") { return {"CollisionDetected", what}; }
inline AssertionError not_a_generator(const std::string& what = "") { return {"NotAGenerator", what}; }
inline AssertionError theorem_violation(const std::string& what = "") { return {"TheoremViolation", what}; }
inline AssertionError internal_error(const std::string& what = "") { return {"InternalError", what}; }

}  // namespace cayleyff
