#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace memristor {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent parameter set, invalid sweep arguments, malformed config.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (trace files, recipe files, too-short traces).
class InputError : public Error {
public:
    using Error::Error;
};

/// Parse error carrying the 1-based line number of the offending input line.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A file could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// The voltage waveform is not a canonical sweep.
class SegmentationError : public InputError {
public:
    using InputError::InputError;
};

/// Gate recipe inconsistent with the device model.
class RecipeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Non-finite state or current during time stepping.
class NumericalInstabilityError : public Error {
public:
    NumericalInstabilityError(std::size_t step, const std::string& what)
        : Error("numerical instability at step " + std::to_string(step) + ": " + what),
          step_(step) {}

    [[nodiscard]] std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

}  // namespace memristor
