#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "heh/syntax/ast.hpp"
#include "heh/syntax/token.hpp"

namespace heh::syntax {

// Parses a token stream holding exactly one expression.
ExprPtr parse(const std::vector<Token>& tokens);

ExprPtr parse_expression(std::string_view source);

// A program is a sequence of top-level `let`/`letrec` bindings followed by
// an optional result expression. Each item starts in column 1; continuation
// lines must be indented.
Program parse_program(std::string_view source);

// Canonical single-line rendering. Parsing the output yields a tree that
// prints identically.
std::string print(const Expr& expr);

}  // namespace heh::syntax
