// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <stdexcept>
#include <string>

namespace chromafix {

/// Base class of all chromafix exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or OS level failure (missing file, unreadable image, write failure).
class IoError : public Error {
public:
    using Error::Error;
};

/// Bad run configuration (unknown method name, invalid ranges).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Dataset manifest failed validation (schema, counts, unresolved paths).
class ManifestError : public Error {
public:
    using Error::Error;
};

/// A model fit hit a singular or numerically rank-deficient system.
class SingularFitError : public Error {
public:
    SingularFitError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}

    /// Estimated condition number of the offending system.
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

}  // namespace chromafix
