#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rustforge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter outside its documented range.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// OBJ face corner referencing a missing position/uv/normal.
class IndexError : public ParseError {
public:
  using ParseError::ParseError;
};

/// OBJ face corner without a texture-coordinate index.
class MissingUvError : public ParseError {
public:
  using ParseError::ParseError;
};

class EmptyMeshError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Unsupported image encoding.
class FormatError : public Error {
public:
  using Error::Error;
};

class SceneError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class GenerationError : public Error {
public:
  using Error::Error;
};

}  // namespace rustforge
