#pragma once

#include <stdexcept>
#include <string>

namespace rsplit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Vector/matrix sizes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A scalar parameter is outside its admissible range (gamma <= 0, eta not in (0,1), ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A resolvent or prox is not defined at the requested point/parameter.
class DomainError : public Error {
public:
    using Error::Error;
};

// Operator moduli admit no valid splitting (alpha + beta <= -1/omega).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// A linear system expected to be positive definite was not.
class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

} // namespace rsplit
