#pragma once

#include <stdexcept>
#include <string>

namespace posscheck {

/// Base of every error the library raises. The CLI maps each kind onto an
/// exit status, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside [0,1] or another admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Unknown variable, unknown label, duplicate name, or mismatched schemas.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// The maximum of a model table is not 1.
class NormalityError : public Error {
public:
    using Error::Error;
};

/// Variable groups of a statement overlap.
class DisjointnessError : public Error {
public:
    using Error::Error;
};

/// Wrong number of groups for an axiom.
class ArityError : public Error {
public:
    using Error::Error;
};

/// Enumeration would exceed the configured variable limit.
class LimitError : public Error {
public:
    using Error::Error;
};

/// Graph vertices or factor cliques do not match what the operation needs.
class GraphError : public Error {
public:
    using Error::Error;
};

/// Malformed model, graph or factorization file. The message names the field.
class ModelError : public Error {
public:
    using Error::Error;
};

class CrispnessError : public Error {
public:
    using Error::Error;
};

class PositivityError : public Error {
public:
    using Error::Error;
};

/// The requested t-norm (or numeric mode) has no decision procedure here.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A result contradicts a theorem the engine relies on. Always a bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace posscheck
