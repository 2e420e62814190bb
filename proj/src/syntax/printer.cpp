#include <sstream>

#include "heh/syntax/parser.hpp"

namespace heh::syntax {

namespace {

// Binding strength of each printed form, loosest first.
enum Level : int {
  kExpr = 0,     // lambda, if, letrec
  kCompare = 1,
  kAdditive = 2,
  kMultiplicative = 3,
  kApplication = 4,
  kPostfix = 5,
  kAtom = 6,
};

int level_of_binop(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add:
    case BinOpKind::Sub: return kAdditive;
    case BinOpKind::Mul:
    case BinOpKind::Div:
    case BinOpKind::Mod: return kMultiplicative;
    default: return kCompare;
  }
}

// A folded literal must print at the precedence of the text it came from.
int level_of_ordinal(const Ordinal& o) {
  const auto& ts = o.terms();
  if (ts.size() > 1) return kAdditive;
  if (ts.size() == 1 && ts[0].exponent != 0 && ts[0].coefficient != 1) return kMultiplicative;
  return kAtom;
}

int level_of(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lambda> || std::is_same_v<T, Cond> ||
                      std::is_same_v<T, Letrec>)
          return kExpr;
        else if constexpr (std::is_same_v<T, BinOp>)
          return level_of_binop(n.op);
        else if constexpr (std::is_same_v<T, OrdinalConst>)
          return level_of_ordinal(n.value);
        else if constexpr (std::is_same_v<T, Apply>)
          return kApplication;
        else if constexpr (std::is_same_v<T, Select>)
          return kPostfix;
        else
          return kAtom;
      },
      e.node);
}

class Printer {
 public:
  std::string run(const Expr& e) {
    emit(e, kExpr);
    return out_.str();
  }

 private:
  std::ostringstream out_;
  bool bar_ctx_ = false;

  void emit(const Expr& e, int ctx) {
    if (level_of(e) < ctx) {
      const bool saved = bar_ctx_;
      bar_ctx_ = false;
      out_ << '(';
      node(e);
      out_ << ')';
      bar_ctx_ = saved;
    } else {
      node(e);
    }
  }

  // Emits into a scratch buffer so an argument starting with `|` can be
  // parenthesized inside a shape.
  void emit_argument(const Expr& e) {
    Printer scratch;
    scratch.bar_ctx_ = bar_ctx_;
    scratch.emit(e, kPostfix);
    std::string text = scratch.out_.str();
    if (bar_ctx_ && !text.empty() && text.front() == '|') {
      Printer plain;
      plain.emit(e, kPostfix);
      out_ << '(' << plain.out_.str() << ')';
    } else {
      out_ << text;
    }
  }

  void unbarred(const Expr& e, int ctx) {
    const bool saved = bar_ctx_;
    bar_ctx_ = false;
    emit(e, ctx);
    bar_ctx_ = saved;
  }

  void node(const Expr& e) {
    std::visit([&](const auto& n) { visit(n); }, e.node);
  }

  void visit(const OrdinalConst& n) { out_ << n.value.to_string(); }
  void visit(const BoolConst& n) { out_ << (n.value ? "true" : "false"); }
  void visit(const Var& n) { out_ << (n.name == "++" ? "(++)" : n.name); }

  void visit(const Lambda& n) {
    out_ << '\\' << n.param << ". ";
    emit(*n.body, kExpr);
  }

  void visit(const Apply& n) {
    emit(*n.fun, kApplication);
    out_ << ' ';
    emit_argument(*n.arg);
  }

  void visit(const Cond& n) {
    out_ << "if ";
    emit(*n.test, kExpr);
    out_ << " then ";
    emit(*n.then_branch, kExpr);
    out_ << " else ";
    emit(*n.else_branch, kExpr);
  }

  void visit(const Letrec& n) {
    out_ << "letrec " << n.name << " = ";
    emit(*n.bound, kExpr);
    out_ << " in ";
    emit(*n.body, kExpr);
  }

  void visit(const BinOp& n) {
    const int lvl = level_of_binop(n.op);
    emit(*n.lhs, lvl);
    if (lvl == kMultiplicative)
      out_ << spelling(n.op);
    else
      out_ << ' ' << spelling(n.op) << ' ';
    emit(*n.rhs, lvl + 1);
  }

  void visit(const ArrayLiteral& n) {
    out_ << '[';
    for (std::size_t i = 0; i < n.elements.size(); ++i) {
      if (i) out_ << ", ";
      unbarred(*n.elements[i], kExpr);
    }
    out_ << ']';
  }

  void visit(const Select& n) {
    emit(*n.array, kPostfix);
    out_ << '.';
    if (std::holds_alternative<ArrayLiteral>(n.index->node) ||
        std::holds_alternative<Var>(n.index->node)) {
      emit(*n.index, kAtom);
    } else {
      out_ << '(';
      unbarred(*n.index, kExpr);
      out_ << ')';
    }
  }

  void visit(const Shape& n) {
    const bool saved = bar_ctx_;
    bar_ctx_ = true;
    out_ << '|';
    emit(*n.arg, kExpr);
    out_ << '|';
    bar_ctx_ = saved;
  }

  void visit(const Reduce& n) {
    out_ << "reduce ";
    emit(*n.fun, kAtom);
    out_ << ' ';
    emit(*n.neutral, kAtom);
    out_ << ' ';
    emit(*n.array, kAtom);
  }

  void visit(const Imap& n) {
    out_ << "imap ";
    emit(*n.frame, kPostfix);
    if (n.cell) {
      out_ << " | ";
      emit(*n.cell, kPostfix);
    }
    out_ << " {";
    const bool saved = bar_ctx_;
    bar_ctx_ = false;
    for (std::size_t i = 0; i < n.partitions.size(); ++i) {
      const Partition& p = n.partitions[i];
      out_ << (i ? ", " : "");
      if (p.gen.full) {
        out_ << "_(" << p.gen.var << ")";
      } else {
        emit(*p.gen.lower, kAdditive);
        out_ << " <= " << p.gen.var << " < ";
        emit(*p.gen.upper, kAdditive);
      }
      out_ << ": ";
      emit(*p.body, kExpr);
    }
    bar_ctx_ = saved;
    out_ << '}';
  }

  void visit(const Filter& n) {
    out_ << "filter ";
    emit(*n.pred, kAtom);
    out_ << ' ';
    emit(*n.array, kAtom);
  }

  void visit(const IsLim& n) {
    out_ << "islim ";
    emit(*n.arg, kAtom);
  }
};

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_tree(*a, *b);
}

}  // namespace

std::string print(const Expr& expr) { return Printer().run(expr); }

bool same_tree(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, OrdinalConst>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, BoolConst>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Var>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, Lambda>)
          return x.param == y.param && same(x.body, y.body);
        else if constexpr (std::is_same_v<T, Apply>)
          return same(x.fun, y.fun) && same(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Cond>)
          return same(x.test, y.test) && same(x.then_branch, y.then_branch) &&
                 same(x.else_branch, y.else_branch);
        else if constexpr (std::is_same_v<T, Letrec>)
          return x.name == y.name && same(x.bound, y.bound) && same(x.body, y.body);
        else if constexpr (std::is_same_v<T, BinOp>)
          return x.op == y.op && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
        else if constexpr (std::is_same_v<T, ArrayLiteral>) {
          if (x.elements.size() != y.elements.size()) return false;
          for (std::size_t i = 0; i < x.elements.size(); ++i)
            if (!same(x.elements[i], y.elements[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Select>)
          return same(x.array, y.array) && same(x.index, y.index);
        else if constexpr (std::is_same_v<T, Shape>)
          return same(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Reduce>)
          return same(x.fun, y.fun) && same(x.neutral, y.neutral) && same(x.array, y.array);
        else if constexpr (std::is_same_v<T, Imap>) {
          if (!same(x.frame, y.frame) || !same(x.cell, y.cell) ||
              x.partitions.size() != y.partitions.size())
            return false;
          for (std::size_t i = 0; i < x.partitions.size(); ++i) {
            const Partition& p = x.partitions[i];
            const Partition& q = y.partitions[i];
            if (p.gen.full != q.gen.full || p.gen.var != q.gen.var ||
                !same(p.gen.lower, q.gen.lower) || !same(p.gen.upper, q.gen.upper) ||
                !same(p.body, q.body))
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Filter>)
          return same(x.pred, y.pred) && same(x.array, y.array);
        else
          return same(x.arg, y.arg);
      },
      a.node);
}

}  // namespace heh::syntax
