#pragma once

#include <stdexcept>
#include <string>

namespace schwarzlift {

// Base of every error raised by the library. Each subclass corresponds to one
// failure mode that callers (and the CLI exit-code mapping) distinguish.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point hit a pole or branch cut of some sub-expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

// f'(z) vanished where a Schwarzian was requested.
class CriticalPoint : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Neither the h-chart nor the g-chart is usable (h' = g' = 0).
class ChartError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

class BoundaryIndex : public Error {
 public:
  using Error::Error;
};

class NegativeVariance : public Error {
 public:
  using Error::Error;
};

class InversionPole : public Error {
 public:
  using Error::Error;
};

class DisconjugacyFailure : public Error {
 public:
  DisconjugacyFailure(const std::string& what, double crossing)
      : Error(what), crossing_(crossing) {}
  double crossing() const { return crossing_; }

 private:
  double crossing_;
};

class NonconvergentLimit : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class MultipleCriticalPoints : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace schwarzlift
