#pragma once

#include <stdexcept>
#include <string>

namespace geotree {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree, unknown vertex/edge id, bad point encoding.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An argument violates an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The tree does not have the shape an operation requires (star, Y-graph, interval).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A configuration lies outside the configuration space in question.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No feasible motion exists (or an input cannot be made feasible).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace geotree
