#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcsent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An amplitude or parameter violates a family constraint (e.g. OCS at beta = 0).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A series or truncated state did not reach the requested tail mass.
class TruncationError : public Error {
  public:
    TruncationError(const std::string &what, double tail_mass, std::size_t terms)
        : Error(what), tail_mass_(tail_mass), terms_(terms) {}

    [[nodiscard]] double tail_mass() const noexcept { return tail_mass_; }
    [[nodiscard]] std::size_t terms() const noexcept { return terms_; }

  private:
    double tail_mass_;
    std::size_t terms_;
};

/// The requested superposition is the null vector (amplitude zero with phi = pi).
class DegenerateStateError : public Error {
  public:
    using Error::Error;
};

/// Two computation routes disagree, or a matrix that must be PSD is not.
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace gcsent
