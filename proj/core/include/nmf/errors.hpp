#pragma once

#include <stdexcept>
#include <string>

namespace nmf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, malformed specs or files, broken invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Latest-action / latest-reward access on a history with no steps.
class EmptyComponentError : public Error {
public:
    explicit EmptyComponentError(const std::string& what)
        : Error("empty component: " + what) {}
};

class NonInvertibleKernelError : public Error {
public:
    explicit NonInvertibleKernelError(double head)
        : Error("non-invertible kernel head: |w0| = " + std::to_string(head) + " < 1e-9") {}
};

/// A decoded state vector matches no embedded tabular state.
class UndecodableHistoryError : public Error {
public:
    using Error::Error;
};

class StateExplosionError : public Error {
public:
    StateExplosionError(std::size_t count, std::size_t cap)
        : Error("state explosion: " + std::to_string(count) +
                " reachable histories exceed the cap of " + std::to_string(cap)),
          count_(count) {}

    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_;
};

/// Misuse of an environment (step before reset, step after the episode ended).
class EnvironmentError : public Error {
public:
    using Error::Error;
};

/// Text input that could not be parsed (CSV, spec strings).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace nmf
