#pragma once

#include <stdexcept>
#include <string>

namespace fockweyl {

/// Invalid run configuration (bad scenario file, inconsistent options).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge (quadrature, power iteration,
/// pad escalation, root finding).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fockweyl
