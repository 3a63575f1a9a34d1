#pragma once

#include <stdexcept>
#include <string>

namespace paracone {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, bad vector text, empty trace.
class InputError : public Error {
public:
    using Error::Error;
};

/// The cone is not given in a representation the operation can use.
class UnsupportedRepresentation : public Error {
public:
    using Error::Error;
};

/// A sampling estimator found nothing to estimate from.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Invalid algorithm parameter (k0 outside the cone, C < 0, ratio outside (0,1)).
class ParameterError : public Error {
public:
    using Error::Error;
};

class InvalidModulus : public Error {
public:
    using Error::Error;
};

/// Unknown corpus entry or missing resource.
class LookupError : public Error {
public:
    using Error::Error;
};

/// No finite defect constant can make the inequality hold on the samples.
class NoFiniteConstant : public Error {
public:
    using Error::Error;
};

/// The mapping produced a non-finite value or threw.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A required point lies outside the mapping's domain box.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace paracone
