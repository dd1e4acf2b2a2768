#pragma once

#include <stdexcept>
#include <string>

namespace relabel {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace relabel
