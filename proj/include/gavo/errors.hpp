#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gavo {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class MissingFile : public Error
{
public:
  explicit MissingFile(const std::string& path)
    : Error("missing file: " + path)
    , path_(path)
  {
  }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

class MalformedLine : public Error
{
public:
  MalformedLine(std::size_t line, const std::string& detail)
    : Error("malformed line " + std::to_string(line) + ": " + detail)
    , line_(line)
  {
  }
  /// 1-based line number in the offending file.
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

class UnsupportedPixelFormat : public Error
{
public:
  using Error::Error;
};

class NonUnitQuaternion : public Error
{
public:
  using Error::Error;
};

class TooManyLevels : public Error
{
public:
  using Error::Error;
};

class InvalidDepth : public Error
{
public:
  using Error::Error;
};

class BehindCamera : public Error
{
public:
  using Error::Error;
};

/// Fewer than 1% of the reference pixels produced a residual.
class DegenerateOverlap : public Error
{
public:
  using Error::Error;
};

class ZeroFitnessSum : public Error
{
public:
  using Error::Error;
};

class NonMonotonicTimestamps : public Error
{
public:
  using Error::Error;
};

class EmptyOverlap : public Error
{
public:
  using Error::Error;
};

class InsufficientLength : public Error
{
public:
  using Error::Error;
};

class EmptyInput : public Error
{
public:
  using Error::Error;
};

class MalformedTrajectory : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace gavo
