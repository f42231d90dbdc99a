#pragma once

#include <stdexcept>
#include <string>

namespace robustest {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (probability not in (0,1),
/// non-positive degrees of freedom, non-finite data, bad level).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Too few observations for the requested procedure.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Zero variance, constant margin, or another input for which the statistic
/// is undefined.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Tied observations reached a statistic that requires continuous data.
class TieError : public Error {
 public:
  using Error::Error;
};

}  // namespace robustest
