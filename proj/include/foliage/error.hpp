#pragma once

#include <stdexcept>
#include <string>

namespace foliage {

enum class Status {
  Ok = 0,
  Parse,
  Dicritical,
  HeightLimit,
  NotIsolated,
  InvalidArg,
  Annotation,
  ReducibleMinpoly,
  NotReduced,
  BranchNotInvariant,
  NonIsolatedOnDivisor,
  Internal,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

// Raised by the text parsers; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& expected)
      : Error(Status::Parse, "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                                 ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace foliage
