#pragma once

#include <stdexcept>
#include <string>

namespace geoach {

// Raised for out-of-domain arguments (non-positive sides, coarse grids, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace geoach
