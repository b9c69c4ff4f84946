#include "fhardy/errors.hpp"

#include <sstream>

namespace fhardy {

namespace {

std::string describe(const std::string& quantity, double error_estimate, double tolerance) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "non-convergence in " << quantity << ": error estimate " << error_estimate
       << " exceeds tolerance " << tolerance;
    return os.str();
}

}  // namespace

NonConvergenceError::NonConvergenceError(const std::string& quantity, double error_estimate,
                                         double tolerance)
    : std::runtime_error(describe(quantity, error_estimate, tolerance)),
      quantity_(quantity),
      error_estimate_(error_estimate),
      tolerance_(tolerance) {}

}  // namespace fhardy
