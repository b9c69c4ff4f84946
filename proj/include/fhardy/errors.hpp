#pragma once

#include <stdexcept>
#include <string>

namespace fhardy {

/// Argument outside the domain of a formula (α range, p ≤ −1, |x| > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An adaptive integral did not reach its tolerance within the subdivision cap.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& quantity, double error_estimate, double tolerance);

    const std::string& quantity() const noexcept { return quantity_; }
    double error_estimate() const noexcept { return error_estimate_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    std::string quantity_;
    double error_estimate_;
    double tolerance_;
};

}  // namespace fhardy
