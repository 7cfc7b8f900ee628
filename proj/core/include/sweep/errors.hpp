#pragma once

#include <stdexcept>
#include <string>

namespace sweep {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameter space or task list (duplicate names, empty plan, ...).
class PlanError : public Error {
public:
    using Error::Error;
};

/// Bad user-facing configuration; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure; the message carries the path involved.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries line/element context.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or incomplete data handed to the aggregation stage.
class DataError : public Error {
public:
    using Error::Error;
};

/// A required external tool is missing from the environment.
class EnvironmentError : public Error {
public:
    using Error::Error;
};

/// The scheduler rejected a submission; message contains its diagnostics.
class SubmitError : public Error {
public:
    using Error::Error;
};

} // namespace sweep
