#pragma once

#include <stdexcept>
#include <string>

namespace tpcsp {

enum class Errc {
  invalid_instance,
  dimension_mismatch,
  limit_exceeded,
  trivial_pi,
  precondition,
  invalid_argument,
  overflow,
  parse,
  io,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& msg)
      : Error(Errc::parse, "line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tpcsp
