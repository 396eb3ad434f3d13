#pragma once

#include <stdexcept>
#include <string>

namespace lorcone {

/// Argument outside the domain of an operation (t outside I, s outside the
/// horizon range, invalid point encoding, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature, root solve or Newton iteration did not reach its tolerance.
/// `estimate` carries the achieved error / residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what + " (achieved " + std::to_string(estimate) + ")"),
          estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// A question that cannot be answered from the available data, e.g. a null
/// boundary query on a fiber without geodesics.
class IndeterminateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Configuration / input parse failure; `where` is a field path or line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace lorcone
