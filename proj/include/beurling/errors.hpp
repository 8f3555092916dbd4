#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two measures living on different lattices were combined.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// An evaluation point lies outside the lattice range.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A density could not be integrated over some lattice cell.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, long long cell)
      : Error(what), cell_(cell) {}
  long long cell() const noexcept { return cell_; }

 private:
  long long cell_;
};

/// A coefficient left the finite double range.
class Overflow : public Error {
 public:
  Overflow(const std::string& what, long long index) : Error(what), index_(index) {}
  long long index() const noexcept { return index_; }

 private:
  long long index_;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NoLogarithm : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class FitFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace beurling
