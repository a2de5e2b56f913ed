#pragma once

#include <stdexcept>
#include <string>

namespace pqlab {

/// Base class for all errors raised by the library. The CLI maps any
/// subclass to exit code 1; usage problems are handled by the parser.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotPeriodic : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoLogarithm : public DomainError {
 public:
  using DomainError::DomainError;
};

class KeyGenError : public DomainError {
 public:
  using DomainError::DomainError;
};

class EncodingError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DecodingError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BlockTooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

class Singular : public DomainError {
 public:
  using DomainError::DomainError;
};

class Unsupported : public DomainError {
 public:
  using DomainError::DomainError;
};

class SigningFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class AuthFailure : public Error {
 public:
  using Error::Error;
};

class ReplayError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace pqlab
