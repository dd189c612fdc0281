#pragma once

#include <stdexcept>
#include <string>

namespace distreg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed config files, infeasible problem sizes, unknown keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A Gram matrix X^T X failed the positive-definiteness / condition-number gate.
// `machine` is the 0-based block index, or -1 for the pooled matrix.
class SingularGramError : public Error {
public:
    explicit SingularGramError(const std::string& what, int machine = -1)
        : Error(what), machine_(machine) {}
    int machine() const { return machine_; }

private:
    int machine_;
};

// Solver did not converge, iterate diverged, or a result left its valid range.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace distreg
