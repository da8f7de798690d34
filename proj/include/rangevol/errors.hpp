#pragma once

#include <stdexcept>
#include <string>

namespace rangevol {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter values (sigma <= 0, bad intervals, bad bars, ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

// The moment equation has no root: k1 <= |k2|.
class InfeasibleMomentsError : public Error {
 public:
  using Error::Error;
};

// Root solver exhausted its iteration budget.
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries the file/line context.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rangevol
