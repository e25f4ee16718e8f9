#pragma once

#include <stdexcept>
#include <string>

namespace cheshire {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
public:
    using Error::Error;
};

// Post-selection success probability below the weak-value threshold.
class OrthogonalSelection : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// A sampled acceptance probability exceeded one; signals a broken rescaling.
class ProbabilityOverflow : public Error {
public:
    using Error::Error;
};

}  // namespace cheshire
