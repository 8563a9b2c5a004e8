#pragma once

#include <stdexcept>
#include <string>

namespace taugeo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class VariantMismatch : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnknownGenerator : public Error {
public:
    using Error::Error;
};

class PresentationMismatch : public Error {
public:
    PresentationMismatch() : Error("elements belong to different presentations") {}
    using Error::Error;
};

/// Thrown when a presentation fails its termination or confluence check.
class StructuralError : public Error {
public:
    using Error::Error;
};

class IllDefinedMap : public Error {
public:
    using Error::Error;
};

class IllDefinedDerivation : public Error {
public:
    using Error::Error;
};

class NoStarStructure : public Error {
public:
    NoStarStructure() : Error("algebra has no star structure") {}
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class RankMismatch : public Error {
public:
    using Error::Error;
};

class NonLinearMap : public Error {
public:
    using Error::Error;
};

class NotAProjection : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// A hermitian form that is not (σ,τ)-invariant where invariance is required.
class NonInvariantForm : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class AnchorNotBasis : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

/// An operation that needs the projector p was called on a geometry without one.
class MissingProjector : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

/// A required commutator [A, B] = 0 fails; the message names the pair.
class CommutationViolation : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotEigenvector : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotUnitary : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotRegular : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class InvalidActionTable : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace taugeo
