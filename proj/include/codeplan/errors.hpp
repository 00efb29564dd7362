#ifndef CODEPLAN_ERRORS_HPP
#define CODEPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace codeplan {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A scenario document violated the file schema (unknown key, bad type,
/// missing field, out-of-range value). The message names the JSON path.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// An in-memory object violated a domain invariant (illegal path tuple,
/// s > batch size, non-positive block cost, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Base class for accuracy-oracle failures. Carries the path that was
/// being evaluated once known.
class OracleError : public Error {
public:
    using Error::Error;
    OracleError(const std::string& msg, std::string path_repr)
        : Error(msg + " [path " + path_repr + "]"), path_repr_(std::move(path_repr)) {}
    const std::string& path_repr() const { return path_repr_; }

private:
    std::string path_repr_;
};

/// Table oracle has no entry for the requested path and no default.
class OracleMiss : public OracleError {
public:
    using OracleError::OracleError;
};

/// External oracle exceeded its reply deadline.
class OracleTimeout : public OracleError {
public:
    using OracleError::OracleError;
};

/// External oracle replied with something that is not one well-formed
/// response object per line.
class ProtocolError : public OracleError {
public:
    using OracleError::OracleError;
};

/// Oracle produced an accuracy outside [0, 1].
class RangeError : public OracleError {
public:
    using OracleError::OracleError;
};

/// Search cannot start: no path improves on the baseline throughput.
class NoAdmissiblePath : public Error {
public:
    using Error::Error;
};

/// Brute-force search would exceed the configured evaluation budget.
class EvaluationBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Accuracy prediction requested against an empty evaluated set.
class EmptyKnownSet : public Error {
public:
    using Error::Error;
};

} // namespace codeplan

#endif // CODEPLAN_ERRORS_HPP
