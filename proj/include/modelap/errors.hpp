#pragma once

#include <stdexcept>
#include <string>

namespace modelap {

// A module precondition was violated (bad window, region too small, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An instance-size guard was exceeded (oracle N_max, brute-force point cap, cover size).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modelap
