#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

// Input lies outside the domain of an operation (bad c1^2, undefined ratio, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Hardy chain requested at beta0 = n*pi/2, where every setting collapses onto
// the Schmidt basis.
class DegenerateBeta0 : public DomainError {
public:
  using DomainError::DomainError;
};

// Product and maximally entangled states admit no Hardy solution.
class NotPartiallyEntangled : public DomainError {
public:
  using DomainError::DomainError;
};

// Caller broke a documented precondition.
class PreconditionViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A result that should be impossible for valid inputs (formula bug, not rounding).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace hardylab
