#include "aoi/errors.hpp"

namespace aoi {

ConvergenceError::ConvergenceError(const std::string& what, double residual, int iterations)
    : Error(what + " (residual " + std::to_string(residual) + " after " +
            std::to_string(iterations) + " iterations)"),
      residual_(residual),
      iterations_(iterations) {}

}  // namespace aoi
