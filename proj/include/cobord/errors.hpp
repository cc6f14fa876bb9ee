#pragma once

#include <stdexcept>
#include <string>

namespace cobord {

// Exit codes used by the CLI; library errors carry the matching code.
enum class ExitCode : int {
  Ok = 0,
  Failure = 1,
  ParseError = 2,
  MaxStepsExceeded = 3,
  PrecisionExhausted = 4,
  InternalInvariant = 5,
};

class Error : public std::runtime_error {
 public:
  Error(std::string msg, ExitCode code = ExitCode::Failure)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ExitCode exit_code() const { return code_; }

 private:
  ExitCode code_;
};

/// Malformed expression text; carries a 0-based position into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")",
              ExitCode::ParseError),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'", ExitCode::ParseError) {}
};

/// A rational constant whose denominator vanishes in the coefficient field.
class BadCharacteristic : public Error {
 public:
  explicit BadCharacteristic(const std::string& msg)
      : Error(msg, ExitCode::ParseError) {}
};

/// A value could not be certified at the working jet precision.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& msg)
      : Error(msg, ExitCode::PrecisionExhausted) {}
};

class NonInvertibleLinearPart : public Error {
 public:
  explicit NonInvertibleLinearPart(const std::string& msg)
      : Error(msg, ExitCode::Failure) {}
};

class NonAdmissible : public Error {
 public:
  explicit NonAdmissible(const std::string& msg)
      : Error(msg, ExitCode::InternalInvariant) {}
};

class NonIntegralWeights : public Error {
 public:
  explicit NonIntegralWeights(const std::string& msg)
      : Error(msg, ExitCode::InternalInvariant) {}
};

class NotCharZero : public Error {
 public:
  explicit NotCharZero(const std::string& msg)
      : Error(msg, ExitCode::Failure) {}
};

class UnitIdeal : public Error {
 public:
  explicit UnitIdeal(const std::string& msg) : Error(msg, ExitCode::Failure) {}
};

class NoContact : public Error {
 public:
  explicit NoContact(const std::string& msg)
      : Error(msg, ExitCode::InternalInvariant) {}
};

class NotHomogeneous : public Error {
 public:
  explicit NotHomogeneous(const std::string& msg)
      : Error(msg, ExitCode::Failure) {}
};

class MaxStepsExceeded : public Error {
 public:
  explicit MaxStepsExceeded(const std::string& msg)
      : Error(msg, ExitCode::MaxStepsExceeded) {}
};

class VNotInterior : public Error {
 public:
  explicit VNotInterior(const std::string& msg)
      : Error(msg, ExitCode::Failure) {}
};

class VNotInSupport : public Error {
 public:
  explicit VNotInSupport(const std::string& msg)
      : Error(msg, ExitCode::Failure) {}
};

/// A condition the algorithms guarantee was violated; signals a caller or
/// library bug, never bad user input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg)
      : Error("internal invariant violated: " + msg,
              ExitCode::InternalInvariant) {}
};

}  // namespace cobord
