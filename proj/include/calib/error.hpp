#pragma once

#include <stdexcept>

namespace calib {

// Single exception type for all recoverable failures (bad input files,
// violated preconditions, unwritable output paths). Messages are meant to be
// shown to the user verbatim.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace calib
