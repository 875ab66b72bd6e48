// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cvbell {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

class NumericalConditioning : public Error {
public:
    using Error::Error;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

class UndefinedState : public Error {
public:
    using Error::Error;
};

class InvalidFunction : public Error {
public:
    using Error::Error;
};

// Raised when a truncated Fock basis drops more norm than allowed.
class CutoffTooSmall : public PrecisionError {
public:
    CutoffTooSmall(const std::string& what, int suggested)
        : PrecisionError(what + " (suggested cutoff " + std::to_string(suggested) + ")"),
          suggested_cutoff_(suggested) {}
    int suggested_cutoff() const noexcept { return suggested_cutoff_; }

private:
    int suggested_cutoff_;
};

}  // namespace cvbell
