#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heh {

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets, end exclusive
  std::size_t end = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

// Base for every diagnostic the interpreter reports to users.
class Error : public std::runtime_error {
 public:
  Error(std::string what, SourceSpan span)
      : std::runtime_error(std::move(what)), span_(span) {}

  const SourceSpan& span() const noexcept { return span_; }
  virtual std::string render() const { return span_.str() + ": " + what(); }

 protected:
  SourceSpan span_;
};

class LexError : public Error {
 public:
  using Error::Error;
  std::string render() const override { return "lex error at " + Error::render(); }
};

class ParseError : public Error {
 public:
  ParseError(std::string what, SourceSpan span, std::vector<std::string> expected = {})
      : Error(std::move(what), span), expected_(std::move(expected)) {}

  const std::vector<std::string>& expected() const noexcept { return expected_; }
  std::string render() const override;

 private:
  std::vector<std::string> expected_;
};

enum class ErrorKind {
  UnboundVariable,
  NotAFunction,
  ShapeMismatch,
  RankMismatch,
  IndexOutOfBounds,
  OffsetOutOfBounds,
  NotAPartition,
  HeterogeneousNesting,
  UndefinedOrdinalOp,
  DivisionByZero,
  ReduceOnInfinite,
  FilterRankError,
  FuelExhausted,
  IrreducibleTerm,
  RecursionDepthExceeded,
};

std::string_view kind_name(ErrorKind kind);

// Runtime failure of a semantic rule. Helpers below the evaluator throw
// without a span; the evaluator attaches the span of the innermost
// expression being evaluated.
class EvalError : public Error {
 public:
  EvalError(ErrorKind kind, std::string rule, std::string message, SourceSpan span = {},
            bool located = false)
      : Error(std::move(message), span), kind_(kind), rule_(std::move(rule)),
        located_(located) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& rule() const noexcept { return rule_; }
  bool located() const noexcept { return located_; }
  void locate(SourceSpan span) {
    span_ = span;
    located_ = true;
  }

  // `error[Kind] in Rule at line:col: message`
  std::string render() const override;

 private:
  ErrorKind kind_;
  std::string rule_;
  bool located_;
};

}  // namespace heh
