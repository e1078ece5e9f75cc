#pragma once

#include <stdexcept>
#include <string>

namespace nullcong {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point lies outside the domain of a chart, branch, or solver.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nullcong
