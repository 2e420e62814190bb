#include <initializer_list>
#include <utility>

#include "heh/syntax/parser.hpp"

namespace heh {

std::string ParseError::render() const {
  std::string out = "parse error at " + span().str() + ": " + what();
  if (!expected_.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected_.size(); ++i) {
      if (i) out += i + 1 == expected_.size() ? " or " : ", ";
      out += expected_[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace heh

namespace heh::syntax {

namespace {

const Ordinal* as_const(const ExprPtr& e) {
  auto* c = std::get_if<OrdinalConst>(&e->node);
  return c ? &c->value : nullptr;
}

// `w^e * c` written as a product of literals denotes the single CNF term.
const Ordinal* fold_product(const ExprPtr& lhs, const ExprPtr& rhs, Ordinal& out) {
  const Ordinal* l = as_const(lhs);
  const Ordinal* r = as_const(rhs);
  if (!l || !r || l->terms().size() != 1 || !r->is_natural()) return nullptr;
  const Term& t = l->terms().front();
  if (t.exponent == 0 || t.coefficient != 1) return nullptr;
  const Natural c = *r->as_natural();
  if (c < 2) return nullptr;
  out = Ordinal::omega_power(t.exponent, c);
  return &out;
}

// `a + w^e*c` with e below the last exponent of `a` appends a CNF term.
const Ordinal* fold_sum(const ExprPtr& lhs, const ExprPtr& rhs, Ordinal& out) {
  const Ordinal* l = as_const(lhs);
  const Ordinal* r = as_const(rhs);
  if (!l || !r || l->is_zero() || r->terms().size() != 1) return nullptr;
  if (!(r->terms().front().exponent < l->terms().back().exponent)) return nullptr;
  out = *l + *r;
  return &out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, bool layout)
      : toks_(std::move(tokens)), layout_(layout) {}

  ExprPtr whole_expression() {
    ExprPtr e = expr();
    expect(Tok::End, "unexpected input after expression");
    return e;
  }

  Program program() {
    Program prog;
    while (kind() == Tok::KwLet || kind() == Tok::KwLetrec) {
      const Token& start = tok();
      const bool recursive = start.kind == Tok::KwLetrec;
      advance();
      std::string name = ident("binding name");
      expect(Tok::Eq, "expected '=' in binding");
      ExprPtr value = expr();
      if (recursive && kind() == Tok::KwIn) {
        advance();
        ExprPtr body = expr();
        prog.result = make(Letrec{std::move(name), std::move(value), std::move(body)},
                           close(start.span));
        finish_program();
        return prog;
      }
      prog.bindings.push_back({recursive, std::move(name), std::move(value), close(start.span)});
      if (kind() != Tok::End) fail("unexpected input after binding");
      next_item();
    }
    if (kind() != Tok::End) {
      prog.result = expr();
      finish_program();
    }
    return prog;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t prev_end_ = 0;
  bool layout_ = false;
  std::size_t item_start_ = 0;
  bool bar_ctx_ = false;  // a bare `|` closes the enclosing construct

  // In layout mode a token in column 1 ends the current top-level item.
  Tok kind() const {
    const Token& t = toks_[pos_];
    if (layout_ && pos_ != item_start_ && t.span.column == 1 && t.kind != Tok::End)
      return Tok::End;
    return t.kind;
  }
  const Token& tok() const { return toks_[pos_]; }

  void next_item() { item_start_ = pos_; }

  void finish_program() {
    if (kind() != Tok::End) fail("unexpected input after expression");
    if (tok().kind != Tok::End) fail("only the last top-level item may be an expression");
  }

  const Token& advance() {
    const Token& t = toks_[pos_];
    prev_end_ = t.span.end;
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  SourceSpan close(SourceSpan start) const {
    start.end = prev_end_ > start.begin ? prev_end_ : start.begin;
    return start;
  }

  [[noreturn]] void fail(const std::string& message,
                         std::initializer_list<std::string_view> expected = {}) const {
    std::vector<std::string> exp(expected.begin(), expected.end());
    std::string msg = message;
    const Token& t = tok();
    msg += t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'";
    throw ParseError(std::move(msg), t.span, std::move(exp));
  }

  const Token& expect(Tok k, const std::string& message) {
    if (kind() != k) fail(message, {describe(k)});
    return advance();
  }

  std::string ident(const char* what) {
    if (kind() != Tok::Ident) {
      if (is_keyword(tok().text) && kind() != Tok::End)
        fail(std::string("keyword '") + tok().text + "' is reserved and cannot be a " + what);
      fail(std::string("expected ") + what, {"identifier"});
    }
    return advance().text;
  }

  struct BarScope {
    Parser& p;
    bool saved;
    BarScope(Parser& parser, bool value) : p(parser), saved(parser.bar_ctx_) {
      p.bar_ctx_ = value;
    }
    ~BarScope() { p.bar_ctx_ = saved; }
  };

  ExprPtr expr() {
    switch (kind()) {
      case Tok::Lambda: return lambda();
      case Tok::KwIf: return cond();
      case Tok::KwLetrec: return letrec();
      default: return comparison();
    }
  }

  ExprPtr lambda() {
    SourceSpan start = advance().span;
    std::string param = ident("parameter name");
    expect(Tok::Dot, "expected '.' after lambda parameter");
    ExprPtr body = expr();
    return make(Lambda{std::move(param), std::move(body)}, close(start));
  }

  ExprPtr cond() {
    SourceSpan start = advance().span;
    ExprPtr test = expr();
    expect(Tok::KwThen, "expected 'then'");
    ExprPtr yes = expr();
    expect(Tok::KwElse, "expected 'else'");
    ExprPtr no = expr();
    return make(Cond{std::move(test), std::move(yes), std::move(no)}, close(start));
  }

  ExprPtr letrec() {
    SourceSpan start = advance().span;
    std::string name = ident("binding name");
    expect(Tok::Eq, "expected '=' in letrec");
    ExprPtr bound = expr();
    expect(Tok::KwIn, "expected 'in' after letrec binding");
    ExprPtr body = expr();
    return make(Letrec{std::move(name), std::move(bound), std::move(body)}, close(start));
  }

  ExprPtr comparison() {
    SourceSpan start = tok().span;
    ExprPtr lhs = additive();
    for (;;) {
      BinOpKind op;
      switch (kind()) {
        case Tok::Lt: op = BinOpKind::Lt; break;
        case Tok::Le: op = BinOpKind::Le; break;
        case Tok::Eq: op = BinOpKind::Eq; break;
        case Tok::Gt: op = BinOpKind::Gt; break;
        case Tok::Ge: op = BinOpKind::Ge; break;
        default: return lhs;
      }
      advance();
      ExprPtr rhs = additive();
      lhs = make(BinOp{op, std::move(lhs), std::move(rhs)}, close(start));
    }
  }

  ExprPtr additive() {
    SourceSpan start = tok().span;
    ExprPtr lhs = multiplicative();
    for (;;) {
      const Tok k = kind();
      if (k != Tok::Plus && k != Tok::Minus && k != Tok::PlusPlus) return lhs;
      const SourceSpan op_span = advance().span;
      ExprPtr rhs = multiplicative();
      if (k == Tok::PlusPlus) {
        ExprPtr fn = make(Var{"++"}, op_span);
        lhs = make(Apply{make(Apply{fn, std::move(lhs)}, close(start)), std::move(rhs)},
                   close(start));
        continue;
      }
      Ordinal folded;
      if (k == Tok::Plus && fold_sum(lhs, rhs, folded)) {
        lhs = make(OrdinalConst{folded}, close(start));
        continue;
      }
      lhs = make(BinOp{k == Tok::Plus ? BinOpKind::Add : BinOpKind::Sub, std::move(lhs),
                       std::move(rhs)},
                 close(start));
    }
  }

  ExprPtr multiplicative() {
    SourceSpan start = tok().span;
    ExprPtr lhs = application();
    for (;;) {
      BinOpKind op;
      switch (kind()) {
        case Tok::Star: op = BinOpKind::Mul; break;
        case Tok::Slash: op = BinOpKind::Div; break;
        case Tok::Percent: op = BinOpKind::Mod; break;
        default: return lhs;
      }
      advance();
      ExprPtr rhs = application();
      Ordinal folded;
      if (op == BinOpKind::Mul && fold_product(lhs, rhs, folded)) {
        lhs = make(OrdinalConst{folded}, close(start));
        continue;
      }
      lhs = make(BinOp{op, std::move(lhs), std::move(rhs)}, close(start));
    }
  }

  bool starts_argument() const {
    switch (kind()) {
      case Tok::Number: case Tok::Ident: case Tok::KwOmega: case Tok::KwTrue:
      case Tok::KwFalse: case Tok::LParen: case Tok::LBracket: case Tok::KwImap:
      case Tok::KwFilter: case Tok::KwReduce: case Tok::KwIslim:
        return true;
      case Tok::Bar:
        return !bar_ctx_;
      default:
        return false;
    }
  }

  ExprPtr application() {
    SourceSpan start = tok().span;
    ExprPtr fn = postfix();
    while (starts_argument()) {
      ExprPtr arg = postfix();
      fn = make(Apply{std::move(fn), std::move(arg)}, close(start));
    }
    return fn;
  }

  ExprPtr postfix() {
    SourceSpan start = tok().span;
    ExprPtr e = primary();
    while (kind() == Tok::Dot) {
      advance();
      ExprPtr index = selection_index();
      e = make(Select{std::move(e), std::move(index)}, close(start));
    }
    return e;
  }

  ExprPtr selection_index() {
    switch (kind()) {
      case Tok::LBracket: return array_literal();
      case Tok::LParen: return parenthesized();
      case Tok::Ident: {
        const Token& t = advance();
        return make(Var{t.text}, t.span);
      }
      default:
        fail("selection index must be a bracketed vector, a parenthesized expression or a "
             "variable",
             {"'['", "'('", "identifier"});
    }
  }

  ExprPtr parenthesized() {
    SourceSpan start = advance().span;
    BarScope scope(*this, false);
    ExprPtr e = expr();
    expect(Tok::RParen, "expected ')'");
    (void)start;
    return e;
  }

  ExprPtr array_literal() {
    SourceSpan start = advance().span;
    BarScope scope(*this, false);
    std::vector<ExprPtr> elems;
    if (kind() != Tok::RBracket) {
      elems.push_back(expr());
      while (kind() == Tok::Comma) {
        advance();
        elems.push_back(expr());
      }
    }
    if (kind() != Tok::RBracket) fail("expected ',' or ']' in array literal", {"','", "']'"});
    advance();
    return make(ArrayLiteral{std::move(elems)}, close(start));
  }

  ExprPtr primary() {
    const Token& t = tok();
    const SourceSpan start = t.span;
    switch (kind()) {
      case Tok::Number:
        advance();
        return make(OrdinalConst{Ordinal(Natural(t.text))}, start);
      case Tok::KwOmega: {
        advance();
        if (kind() != Tok::Caret) return make(OrdinalConst{Ordinal::omega()}, start);
        advance();
        const Token& e = expect(Tok::Number, "expected a natural exponent after '^'");
        return make(OrdinalConst{Ordinal::omega_power(Natural(e.text))}, close(start));
      }
      case Tok::KwTrue: advance(); return make(BoolConst{true}, start);
      case Tok::KwFalse: advance(); return make(BoolConst{false}, start);
      case Tok::Ident: advance(); return make(Var{t.text}, start);
      case Tok::LParen: return parenthesized();
      case Tok::LBracket: return array_literal();
      case Tok::Bar: {
        advance();
        ExprPtr arg;
        {
          BarScope scope(*this, true);
          arg = expr();
        }
        expect(Tok::Bar, "expected closing '|' of shape");
        return make(Shape{std::move(arg)}, close(start));
      }
      case Tok::KwImap: return imap();
      case Tok::KwFilter: {
        advance();
        ExprPtr pred = primary();
        ExprPtr arr = primary();
        return make(Filter{std::move(pred), std::move(arr)}, close(start));
      }
      case Tok::KwReduce: {
        advance();
        ExprPtr fn = primary();
        ExprPtr neutral = primary();
        ExprPtr arr = primary();
        return make(Reduce{std::move(fn), std::move(neutral), std::move(arr)}, close(start));
      }
      case Tok::KwIslim: {
        advance();
        return make(IsLim{primary()}, close(start));
      }
      case Tok::Lambda: case Tok::KwIf: case Tok::KwLetrec:
        fail("this form must be parenthesized here", {"'('"});
      default:
        fail("expected an expression",
             {"number", "identifier", "'w'", "'('", "'['", "'|'", "'imap'", "'\\'"});
    }
  }

  ExprPtr imap() {
    SourceSpan start = advance().span;
    ExprPtr frame, cell;
    {
      BarScope scope(*this, true);
      frame = application();
    }
    if (kind() == Tok::Bar) {
      advance();
      BarScope scope(*this, false);
      cell = application();
    }
    expect(Tok::LBrace, "expected '{' to open imap partitions");
    BarScope scope(*this, false);
    std::vector<Partition> parts;
    for (;;) {
      Generator gen = generator();
      expect(Tok::Colon, "expected ':' after generator");
      ExprPtr body = expr();
      parts.push_back({std::move(gen), std::move(body)});
      if (kind() != Tok::Comma) break;
      advance();
    }
    if (kind() != Tok::RBrace) fail("expected ',' or '}' after partition", {"','", "'}'"});
    advance();
    return make(Imap{std::move(frame), std::move(cell), std::move(parts)}, close(start));
  }

  Generator generator() {
    Generator g;
    SourceSpan start = tok().span;
    if (kind() == Tok::Underscore) {
      advance();
      expect(Tok::LParen, "expected '(' after '_'");
      g.full = true;
      g.var = ident("generator variable");
      expect(Tok::RParen, "expected ')'");
    } else {
      g.lower = additive();
      expect(Tok::Le, "expected '<=' in generator");
      g.var = ident("generator variable");
      expect(Tok::Lt, "expected '<' in generator");
      g.upper = additive();
    }
    g.span = close(start);
    return g;
  }
};

}  // namespace

std::string_view spelling(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add: return "+";
    case BinOpKind::Sub: return "-";
    case BinOpKind::Mul: return "*";
    case BinOpKind::Div: return "/";
    case BinOpKind::Mod: return "%";
    case BinOpKind::Lt: return "<";
    case BinOpKind::Le: return "<=";
    case BinOpKind::Eq: return "=";
    case BinOpKind::Gt: return ">";
    case BinOpKind::Ge: return ">=";
  }
  return "?";
}

ExprPtr parse(const std::vector<Token>& tokens) {
  return Parser(tokens, false).whole_expression();
}

ExprPtr parse_expression(std::string_view source) { return parse(tokenize(source)); }

Program parse_program(std::string_view source) {
  return Parser(tokenize(source), true).program();
}

}  // namespace heh::syntax
