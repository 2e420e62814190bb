#include <array>
#include <cctype>
#include <utility>

#include "heh/syntax/token.hpp"

namespace heh::syntax {

namespace {

constexpr std::array<std::pair<std::string_view, Tok>, 13> kKeywords{{
    {"if", Tok::KwIf},
    {"then", Tok::KwThen},
    {"else", Tok::KwElse},
    {"let", Tok::KwLet},
    {"letrec", Tok::KwLetrec},
    {"in", Tok::KwIn},
    {"imap", Tok::KwImap},
    {"filter", Tok::KwFilter},
    {"reduce", Tok::KwReduce},
    {"islim", Tok::KwIslim},
    {"true", Tok::KwTrue},
    {"false", Tok::KwFalse},
    {"w", Tok::KwOmega},
}};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", span_from(pos_, line_, col_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      char c = src_[pos_++];
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col_;  // count code points, not continuation bytes
      }
    }
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SourceSpan span_from(std::size_t begin, std::uint32_t line, std::uint32_t col) const {
    return SourceSpan{begin, pos_, line, col};
  }

  Token next() {
    const std::size_t begin = pos_;
    const std::uint32_t line = line_, col = col_;
    auto simple = [&](Tok kind, std::size_t len) {
      advance(len);
      return Token{kind, std::string(src_.substr(begin, len)), span_from(begin, line, col)};
    };

    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      return {Tok::Number, std::string(src_.substr(begin, pos_ - begin)),
              span_from(begin, line, col)};
    }
    if (ident_start(c)) {
      while (ident_char(peek())) advance();
      std::string word(src_.substr(begin, pos_ - begin));
      if (word == "_") return {Tok::Underscore, word, span_from(begin, line, col)};
      for (const auto& [kw, kind] : kKeywords)
        if (word == kw) return {kind, word, span_from(begin, line, col)};
      return {Tok::Ident, std::move(word), span_from(begin, line, col)};
    }
    // U+03BB GREEK SMALL LETTER LAMDA
    if (src_.substr(pos_, 2) == "\xCE\xBB") return simple(Tok::Lambda, 2);
    if (src_.substr(pos_, 4) == "(++)") {
      advance(4);
      return {Tok::Ident, "++", span_from(begin, line, col)};
    }
    switch (c) {
      case '\\': return simple(Tok::Lambda, 1);
      case '.': return simple(Tok::Dot, 1);
      case '(': return simple(Tok::LParen, 1);
      case ')': return simple(Tok::RParen, 1);
      case '[': return simple(Tok::LBracket, 1);
      case ']': return simple(Tok::RBracket, 1);
      case '{': return simple(Tok::LBrace, 1);
      case '}': return simple(Tok::RBrace, 1);
      case ',': return simple(Tok::Comma, 1);
      case ':': return simple(Tok::Colon, 1);
      case '|': return simple(Tok::Bar, 1);
      case '^': return simple(Tok::Caret, 1);
      case '+': return peek(1) == '+' ? simple(Tok::PlusPlus, 2) : simple(Tok::Plus, 1);
      case '-': return simple(Tok::Minus, 1);
      case '*': return simple(Tok::Star, 1);
      case '/': return simple(Tok::Slash, 1);
      case '%': return simple(Tok::Percent, 1);
      case '=': return simple(Tok::Eq, 1);
      case '<': return peek(1) == '=' ? simple(Tok::Le, 2) : simple(Tok::Lt, 1);
      case '>': return peek(1) == '=' ? simple(Tok::Ge, 2) : simple(Tok::Gt, 1);
      default: break;
    }
    advance();
    throw LexError("unrecognized character '" + std::string(src_.substr(begin, pos_ - begin)) +
                       "'",
                   span_from(begin, line, col));
  }
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (const auto& [kw, kind] : kKeywords)
    if (word == kw) return true;
  return false;
}

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwLet: return "'let'";
    case Tok::KwLetrec: return "'letrec'";
    case Tok::KwIn: return "'in'";
    case Tok::KwImap: return "'imap'";
    case Tok::KwFilter: return "'filter'";
    case Tok::KwReduce: return "'reduce'";
    case Tok::KwIslim: return "'islim'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwOmega: return "'w'";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Bar: return "'|'";
    case Tok::Underscore: return "'_'";
    case Tok::Caret: return "'^'";
    case Tok::Plus: return "'+'";
    case Tok::PlusPlus: return "'++'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace heh::syntax
