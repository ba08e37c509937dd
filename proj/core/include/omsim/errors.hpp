#ifndef OMSIM_ERRORS_HPP
#define OMSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace omsim {

/// Parameter validation failure. Carries the name of the offending field.
class InvalidParameter : public std::invalid_argument {
public:
    InvalidParameter(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }
private:
    std::string field_;
};

/// Mean-field iteration exceeded the iteration budget (bistable or
/// dynamically non-stationary operating point).
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }
private:
    double residual_;
};

/// The drift matrix has an eigenvalue with nonnegative real part.
class UnstableSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Lyapunov operator is numerically singular (marginal stability).
class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A covariance input violates physicality beyond numerical tolerance.
class NonPhysicalInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Oracle or run configuration violates an invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection predicate takes the same value at both bracket ends.
class NoSignChange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace omsim

#endif
