#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acsplit {

// Base of everything the library throws on bad input or numerical failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke an API contract (mismatched grids, negative time, bad sizes).
class ContractError : public Error {
public:
    using Error::Error;
};

// An operation's mathematical precondition does not hold for the given data.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, std::size_t node)
        : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
    explicit PreconditionError(const std::string& what) : Error(what) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_ = static_cast<std::size_t>(-1);
};

// Potential evaluated outside its domain, e.g. the logarithmic F at |u| >= 1.
class DomainError : public Error {
public:
    using Error::Error;
};

// Nonlinear solve failed to converge.
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::size_t node, double residual)
        : Error(what + " (node " + std::to_string(node) + ", residual " +
                std::to_string(residual) + ")"),
          node_(node), residual_(residual) {}
    explicit SolverError(const std::string& what) : Error(what) {}

    std::size_t node() const noexcept { return node_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t node_ = static_cast<std::size_t>(-1);
    double residual_ = 0.0;
};

class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

class DegenerateDrawError : public Error {
public:
    using Error::Error;
};

class UndefinedRateError : public Error {
public:
    using Error::Error;
};

}  // namespace acsplit
