#pragma once

#include <stdexcept>
#include <string>

namespace modroots {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Input lies outside what the chosen representation or table can hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A configured work limit would be exceeded; nothing was computed.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Two independent routes disagreed, or a structural invariant broke.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace modroots
