#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "heh/error.hpp"
#include "heh/ordinal.hpp"
#include "heh/syntax/ast.hpp"

namespace heh::runtime {

using Index = std::vector<Ordinal>;

struct Handle {
  std::uint64_t id = 0;
  friend bool operator==(Handle, Handle) = default;
  friend auto operator<=>(Handle, Handle) = default;
};

// Persistent name -> handle bindings; the newest binding shadows older ones.
class Env {
 public:
  Env() = default;

  Env bind(std::string name, Handle h) const;
  std::optional<Handle> lookup(std::string_view name) const;
  bool empty() const noexcept { return head_ == nullptr; }

 private:
  struct Node {
    std::string name;
    Handle handle;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

struct FunClosure {
  std::string param;
  syntax::ExprPtr body;
  Env env;
};

using FunPtr = std::shared_ptr<const FunClosure>;
using Scalar = std::variant<Ordinal, bool, FunPtr>;

struct StrictArray {
  Index shape;
  std::vector<Scalar> data;  // row-major

  static StrictArray scalar(Scalar s) { return {{}, {std::move(s)}}; }
  bool is_scalar() const noexcept { return shape.empty(); }
};

// Half-open axis-aligned box [lower, upper).
struct Box {
  Index lower;
  Index upper;

  std::size_t rank() const noexcept { return lower.size(); }
  bool empty() const;
  bool contains(const Index& i) const;
  friend bool operator==(const Box&, const Box&) = default;
};

struct Gen {
  std::string var;
  Index lower;
  Index upper;
};

struct ImapRule {
  std::string var;
  syntax::ExprPtr body;
};

struct IndexHash {
  std::size_t operator()(const Index& index) const noexcept;
};

struct PendingBox {
  Box box;
  std::size_t rule;  // into ImapClosure::rules
};

// Lazy imap: unevaluated boxes keep their generator body, memoized boxes are
// single indices mapped to result handles.
struct ImapClosure {
  Index frame;
  Index cell;
  std::vector<ImapRule> rules;
  Env env;
  std::vector<PendingBox> pending;
  std::unordered_map<Index, Handle, IndexHash> memo;
  SourceSpan span;
};

struct FilterSegment {
  std::vector<Handle> accepted;
  Natural scanned = 0;
};

struct FilterClosure {
  Handle predicate;
  Handle argument;
  Ordinal extent;  // length of the argument vector
  std::map<Ordinal, FilterSegment> segments;  // keyed by limit-or-zero start
  SourceSpan span;
};

struct Alias { Handle target; };
struct Bottom {};  // letrec placeholder before its bound expression finishes

using Value = std::variant<StrictArray, std::unique_ptr<ImapClosure>,
                           std::unique_ptr<FilterClosure>, Gen, Alias, Bottom>;

class Store {
 public:
  Handle insert(Value v);
  // Follows alias cells.
  Handle resolve(Handle h) const;
  Value& at(Handle h) { return cells_[resolve(h).id]; }
  const Value& at(Handle h) const { return cells_[resolve(h).id]; }
  Value& raw(Handle h) { return cells_[h.id]; }
  void overwrite(Handle h, Value v) { cells_[h.id] = std::move(v); }
  std::size_t size() const noexcept { return cells_.size(); }

 private:
  std::deque<Value> cells_;
};

// Row-major, 0-based offset of `index` within a finite `shape`.
std::size_t linearize(const Index& shape, const Index& index);
Index delinearize(const Index& shape, std::size_t offset);

// Number of elements of a finite shape; nullopt when some extent is
// transfinite or the count exceeds `limit`.
std::optional<std::size_t> element_count(const Index& shape,
                                         std::size_t limit = SIZE_MAX);

bool all_finite(const Index& shape);

std::optional<Box> intersect(const Box& a, const Box& b);

// outer \ inner as at most 2d disjoint boxes, ordered axis 0 low side,
// axis 0 high side, axis 1 low side, ... Empty pieces are omitted.
std::vector<Box> box_subtract(const Box& outer, const Box& inner);

// Pairwise disjoint, each inside `frame`, and jointly covering it.
bool forms_partition(const Box& frame, const std::vector<Box>& parts);

std::string format_index(const Index& index);

}  // namespace heh::runtime
