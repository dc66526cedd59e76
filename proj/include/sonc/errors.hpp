#pragma once

#include <stdexcept>
#include <string>

namespace sonc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& msg)
      : Error("syntax error at position " + std::to_string(position) + ": " + msg),
        position(position) {}
  std::size_t position;
};

class VariableOutOfRange : public SyntaxError {
 public:
  VariableOutOfRange(std::size_t position, const std::string& msg) : SyntaxError(position, msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// A polynomial fails to be an ST-polynomial for one of the reasons below.
class NotSTForm : public Error {
 public:
  explicit NotSTForm(const std::string& msg) : Error(msg) {}
};

class NotSimplex : public NotSTForm {
 public:
  explicit NotSimplex(const std::string& msg) : NotSTForm(msg) {}
};

class ClubsuitViolated : public NotSTForm {
 public:
  explicit ClubsuitViolated(const std::string& msg) : NotSTForm(msg) {}
};

class NotInSimplex : public NotSTForm {
 public:
  explicit NotInSimplex(const std::string& msg) : NotSTForm(msg) {}
};

class DegenerateSimplex : public Error {
 public:
  explicit DegenerateSimplex(const std::string& msg) : Error(msg) {}
};

class DegenerateSupport : public Error {
 public:
  explicit DegenerateSupport(const std::string& msg) : Error(msg) {}
};

class NoTailTerm : public Error {
 public:
  explicit NoTailTerm(const std::string& msg) : Error(msg) {}
};

class NegativeExponent : public Error {
 public:
  explicit NegativeExponent(const std::string& msg) : Error(msg) {}
};

class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

class TailNotCovered : public Error {
 public:
  explicit TailNotCovered(const std::string& msg) : Error(msg) {}
};

class TargetNotVertex : public Error {
 public:
  explicit TargetNotVertex(const std::string& msg) : Error(msg) {}
};

class ReconstructionFailure : public Error {
 public:
  explicit ReconstructionFailure(const std::string& msg) : Error(msg) {}
};

class SolverFailure : public Error {
 public:
  explicit SolverFailure(const std::string& msg) : Error(msg) {}
};

class NoStartingPoint : public SolverFailure {
 public:
  explicit NoStartingPoint(const std::string& msg) : SolverFailure(msg) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

}  // namespace sonc
