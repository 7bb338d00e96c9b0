#pragma once

#include <stdexcept>
#include <string>

namespace ncx2 {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for failures of the numerical machinery itself (bracketing, iteration
// caps, self-consistency checks). These indicate a bug or an unsupported
// extreme, never bad user input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Two algebraically equivalent evaluation routes disagreed.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace ncx2
