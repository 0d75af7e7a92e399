#pragma once

#include <stdexcept>
#include <string>

namespace webcorp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad or missing configuration / resource files. Maps to CLI exit code 1.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed input data. Maps to CLI exit code 2.
class DataError : public Error {
  public:
    using Error::Error;
};

} // namespace webcorp
