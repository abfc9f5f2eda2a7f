#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boxcalc/syntax.hpp"

namespace boxcalc {

struct ParseError : std::runtime_error {
  ParseError(Span span, std::string message, std::vector<std::string> expected)
      : std::runtime_error("parse error at " + std::to_string(span.line) + ":" +
                           std::to_string(span.column) + ": " + message),
        span(span),
        expected(std::move(expected)) {}
  Span span;
  std::vector<std::string> expected;
};

Type parse_type(std::string_view text);
Term parse_term(std::string_view text);

// One `def name : TYPE = TERM ;` item of a program file.
struct Def {
  std::string name;
  Type declared;
  Term term;
  Span span;
};

// Program files: a sequence of defs, `--` line comments, UTF-8.
std::vector<Def> parse_program(std::string_view text);

}  // namespace boxcalc
