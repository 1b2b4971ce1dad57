#pragma once

#include <stdexcept>
#include <string>

namespace lfc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed, truncated or otherwise undecodable byte streams.
class FormatError : public Error {
public:
  using Error::Error;
};

/// A subprocess (external codec or synthesizer) failed.
class ExternalToolError : public Error {
public:
  using Error::Error;
};

} // namespace lfc
