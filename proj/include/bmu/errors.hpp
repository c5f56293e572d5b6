#pragma once

#include <stdexcept>
#include <string>

namespace bmu {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Leg lists or matrix shapes do not line up.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// The braiding provider cannot produce a requested crossing.
class BraidingError : public Error {
 public:
  using Error::Error;
};

/// An element could not be written as a combination of crossed-product
/// generators, or the extension of a morphism was not well defined.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// An operator on several legs does not factor through the requested legs.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Invalid finite-group data or Yetter-Drinfeld compatibility violations.
class GroupError : public Error {
 public:
  using Error::Error;
};

/// A constructed operator fails the identity it is supposed to satisfy.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A JSON bundle does not follow the schema. `path()` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class UnsupportedVersionError : public SchemaError {
 public:
  explicit UnsupportedVersionError(int version)
      : SchemaError("/version", "unsupported bundle version " + std::to_string(version)),
        version_(version) {}
  int version() const { return version_; }

 private:
  int version_;
};

/// Syntax error in a leg-notation statement. Line is 1-based, column is the
/// 0-based character offset within the line.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace bmu
