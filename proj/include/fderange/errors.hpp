#pragma once

#include <stdexcept>

namespace fderange {

// Bad arguments or malformed inputs. The CLI maps these to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroSize : ValidationError { using ValidationError::ValidationError; };
struct TargetOutOfRange : ValidationError { using ValidationError::ValidationError; };
struct SizeMismatch : ValidationError { using ValidationError::ValidationError; };
struct NotTwoMax : ValidationError { using ValidationError::ValidationError; };
struct TooLarge : ValidationError { using ValidationError::ValidationError; };
struct NotRegular : ValidationError { using ValidationError::ValidationError; };
struct DuplicateEdge : ValidationError { using ValidationError::ValidationError; };
struct IndexOutOfRange : ValidationError { using ValidationError::ValidationError; };
struct MalformedLine : ValidationError { using ValidationError::ValidationError; };
struct OddDegree : ValidationError { using ValidationError::ValidationError; };
struct NotFourRegular : ValidationError { using ValidationError::ValidationError; };
struct NotDisjoint : ValidationError { using ValidationError::ValidationError; };
struct NotDivisible : ValidationError { using ValidationError::ValidationError; };

// Searches or samplers that ran out of budget, and internal cross-checks
// that tripped. The CLI maps these to exit code 1.
struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RejectionBudgetExceeded : RuntimeFailure { using RuntimeFailure::RuntimeFailure; };
struct BudgetExhausted : RuntimeFailure { using RuntimeFailure::RuntimeFailure; };
struct NoPerfectMatching : RuntimeFailure { using RuntimeFailure::RuntimeFailure; };
struct InternalError : RuntimeFailure { using RuntimeFailure::RuntimeFailure; };

}  // namespace fderange
