#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starkernel {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// A precondition on the numerical content of an argument was violated
/// (non-anti-Hermitian input to expm, non-finite entries, ...).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// A Gram matrix is rank deficient where full rank is required.
class RankError : public Error {
  public:
    RankError(const std::string &what, std::size_t rank, std::size_t expected)
        : Error(what), rank_(rank), expected_(expected) {}

    std::size_t rank() const noexcept { return rank_; }
    std::size_t expected() const noexcept { return expected_; }

  private:
    std::size_t rank_;
    std::size_t expected_;
};

/// Linear trace constraints admit no solution.
class InfeasibleError : public RankError {
  public:
    using RankError::RankError;
};

/// Input text could not be parsed; carries a location for diagnostics.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::string location)
        : Error(location.empty() ? what : location + ": " + what),
          location_(std::move(location)) {}

    const std::string &location() const noexcept { return location_; }

  private:
    std::string location_;
};

/// Quadrature did not converge; tail_estimate bounds the neglected part.
class QuadratureError : public Error {
  public:
    QuadratureError(const std::string &what, double tail_estimate)
        : Error(what), tail_(tail_estimate) {}

    double tail_estimate() const noexcept { return tail_; }

  private:
    double tail_;
};

/// Interpolation point lies outside the sampled grid.
class GridCoverageError : public Error {
  public:
    using Error::Error;
};

} // namespace starkernel
