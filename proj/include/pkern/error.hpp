#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pkern {

enum class ErrorCode {
  Input = 1,
  Parse = 2,
  CommitConflict = 3,
  BudgetExceeded = 4,
  OracleRefused = 5,
  ContractViolation = 6,
  Internal = 7,
};

// Base of every error raised by the library. The C API maps code() onto
// pk_status values one-to-one.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(ErrorCode::Input, what) {}
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class CommitConflict : public Error {
public:
  explicit CommitConflict(const std::string& what) : Error(ErrorCode::CommitConflict, what) {}
};

class OracleRefused : public Error {
public:
  explicit OracleRefused(const std::string& what) : Error(ErrorCode::OracleRefused, what) {}
};

class ContractViolation : public Error {
public:
  explicit ContractViolation(const std::string& what) : Error(ErrorCode::ContractViolation, what) {}
};

}  // namespace pkern
