#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "heh/error.hpp"
#include "heh/ordinal.hpp"

namespace heh::syntax {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOpKind { Add, Sub, Mul, Div, Mod, Lt, Le, Eq, Gt, Ge };

std::string_view spelling(BinOpKind op);

struct OrdinalConst { Ordinal value; };
struct BoolConst { bool value; };
struct Var { std::string name; };
struct Lambda { std::string param; ExprPtr body; };
struct Apply { ExprPtr fun; ExprPtr arg; };
struct Cond { ExprPtr test; ExprPtr then_branch; ExprPtr else_branch; };
struct Letrec { std::string name; ExprPtr bound; ExprPtr body; };
struct BinOp { BinOpKind op; ExprPtr lhs; ExprPtr rhs; };
struct ArrayLiteral { std::vector<ExprPtr> elements; };
struct Select { ExprPtr array; ExprPtr index; };
struct Shape { ExprPtr arg; };
struct Reduce { ExprPtr fun; ExprPtr neutral; ExprPtr array; };

// `_(x)` when `full`, otherwise `lower <= x < upper`.
struct Generator {
  bool full = false;
  ExprPtr lower;
  std::string var;
  ExprPtr upper;
  SourceSpan span;
};

struct Partition {
  Generator gen;
  ExprPtr body;
};

struct Imap {
  ExprPtr frame;
  ExprPtr cell;  // null when the cell shape is omitted
  std::vector<Partition> partitions;
};

struct Filter { ExprPtr pred; ExprPtr array; };
struct IsLim { ExprPtr arg; };

using Node = std::variant<OrdinalConst, BoolConst, Var, Lambda, Apply, Cond, Letrec,
                          BinOp, ArrayLiteral, Select, Shape, Reduce, Imap, Filter,
                          IsLim>;

struct Expr {
  Node node;
  SourceSpan span;
};

template <class T>
ExprPtr make(T node, SourceSpan span = {}) {
  return std::make_shared<const Expr>(Expr{Node{std::move(node)}, span});
}

// Top-level `let x = e` / `letrec x = e` binding.
struct Binding {
  bool recursive = false;
  std::string name;
  ExprPtr value;
  SourceSpan span;
};

struct Program {
  std::vector<Binding> bindings;
  ExprPtr result;  // null for a binding-only program
};

// Structural equality, ignoring spans.
bool same_tree(const Expr& a, const Expr& b);

}  // namespace heh::syntax
