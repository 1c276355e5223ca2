#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

// Shape and dimension violations (non-square input, mismatched operands).
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid user-supplied parameters (non-conjugate exponents, bad weights, t ~ 0).
struct BadParam : std::invalid_argument {
    explicit BadParam(const std::string& what) : std::invalid_argument(what) {}
};

// Matrix fails a structural precondition (not Hermitian / not symmetric).
struct NotHermitian : std::invalid_argument {
    explicit NotHermitian(const std::string& what) : std::invalid_argument(what) {}
};

// Spectrum outside the domain of the requested scalar function.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Iterative eigensolver exceeded its sweep cap.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// A verified hypothesis of an inequality does not hold for the given instance.
struct ConditionViolated : std::runtime_error {
    explicit ConditionViolated(const std::string& what) : std::runtime_error(what) {}
};

// Map family does not sum to the identity where unitality is required.
struct NotUnital : std::runtime_error {
    explicit NotUnital(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds a hard implementation cap (e.g. 2^n principal minors).
struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

// Rejection sampler gave up before finding an admissible instance.
struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bohr
