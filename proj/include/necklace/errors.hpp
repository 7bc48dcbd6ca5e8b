#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

// Errors split in two families: invalid input (exit code 2 in the CLI) and
// numerical failure (exit code 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GridMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateMetric : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class EmbeddingViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureDivergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RootNotBracketed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BracketFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoContraction : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllConditioned : public NumericalError {
public:
    IllConditioned(const std::string& what, int mode) : NumericalError(what), mode_(mode) {}
    int mode() const { return mode_; }

private:
    int mode_;
};

}  // namespace necklace
