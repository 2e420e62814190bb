#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "heh/error.hpp"
#include "heh/ordinal.hpp"

namespace heh::syntax {

enum class Tok {
  Number,
  Ident,
  // keywords
  KwIf, KwThen, KwElse, KwLet, KwLetrec, KwIn, KwImap, KwFilter, KwReduce,
  KwIslim, KwTrue, KwFalse, KwOmega,
  // punctuation
  Lambda, Dot, LParen, RParen, LBracket, RBracket, LBrace, RBrace, Comma,
  Colon, Bar, Underscore, Caret,
  // operators
  Plus, PlusPlus, Minus, Star, Slash, Percent, Lt, Le, Eq, Gt, Ge,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier name or numeral digits
  SourceSpan span;
};

std::string_view describe(Tok kind);

// `;` starts a comment running to end of line. `(++)` lexes as the
// identifier `++`.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace heh::syntax
