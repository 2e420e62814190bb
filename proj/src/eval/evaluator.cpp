#include "heh/eval/evaluator.hpp"

#include <algorithm>

namespace heh::eval {

using namespace runtime;
namespace ast = heh::syntax;

namespace {

// Eager construction is skipped for arrays larger than this; they stay lazy.
constexpr std::size_t kStrictElementLimit = std::size_t{1} << 24;

[[noreturn]] void fail(ErrorKind kind, const char* rule, std::string message) {
  throw EvalError(kind, rule, std::move(message));
}

struct CounterGuard {
  std::size_t& n;
  explicit CounterGuard(std::size_t& counter) : n(counter) { ++n; }
  ~CounterGuard() { --n; }
  CounterGuard(const CounterGuard&) = delete;
  CounterGuard& operator=(const CounterGuard&) = delete;
};

Index concat(Index a, const Index& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Index successor(Index i) {
  for (Ordinal& o : i) o = o + Ordinal(1);
  return i;
}

const char* scalar_kind(const Scalar& s) {
  if (std::holds_alternative<Ordinal>(s)) return "an ordinal";
  if (std::holds_alternative<bool>(s)) return "a boolean";
  return "a function";
}

std::size_t small(const Natural& n, const char* rule, const char* what) {
  if (n > Natural(SIZE_MAX / 2)) fail(ErrorKind::IndexOutOfBounds, rule, std::string(what) + " too large");
  return static_cast<std::size_t>(n);
}

}  // namespace

Handle Evaluator::scalar_cell(Scalar s) { return store_.insert(StrictArray::scalar(std::move(s))); }

Handle Evaluator::index_cell(const Index& i) {
  StrictArray a{{Ordinal(static_cast<std::uint64_t>(i.size()))}, {}};
  a.data.reserve(i.size());
  for (const Ordinal& o : i) a.data.emplace_back(o);
  return store_.insert(std::move(a));
}

void Evaluator::charge(const SourceSpan& span) {
  ++stats_.rule_applications;
  if (!remaining_fuel_) return;
  if (*remaining_fuel_ == 0)
    throw EvalError(ErrorKind::FuelExhausted, "eval",
                    config_.fuel ? "fuel exhausted after " + std::to_string(*config_.fuel) +
                                       " rule applications"
                                 : std::string("evaluation budget exhausted"),
                    span, true);
  --*remaining_fuel_;
}

Handle Evaluator::eval(const ast::Expr& e, const Env& env) {
  charge(e.span);
  if (depth_ >= config_.max_depth)
    throw EvalError(ErrorKind::RecursionDepthExceeded, "eval",
                    "evaluation nested deeper than " + std::to_string(config_.max_depth) +
                        " frames",
                    e.span, true);
  CounterGuard guard(depth_);
  try {
    return eval_node(e, env);
  } catch (EvalError& err) {
    if (!err.located()) err.locate(e.span);
    throw;
  }
}

Handle Evaluator::eval_node(const ast::Expr& e, const Env& env) {
  const SourceSpan& span = e.span;
  return std::visit(
      [&](const auto& n) -> Handle {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::OrdinalConst>) {
          return scalar_cell(n.value);
        } else if constexpr (std::is_same_v<T, ast::BoolConst>) {
          return scalar_cell(n.value);
        } else if constexpr (std::is_same_v<T, ast::Var>) {
          auto h = env.lookup(n.name);
          if (!h) fail(ErrorKind::UnboundVariable, "Var", "unbound variable '" + n.name + "'");
          const Handle r = store_.resolve(*h);
          if (std::holds_alternative<Bottom>(store_.raw(r)))
            fail(ErrorKind::UnboundVariable, "Letrec",
                 "premature recursive reference to '" + n.name + "'");
          return r;
        } else if constexpr (std::is_same_v<T, ast::Lambda>) {
          return scalar_cell(std::make_shared<const FunClosure>(FunClosure{n.param, n.body, env}));
        } else if constexpr (std::is_same_v<T, ast::Apply>) {
          const Handle f = eval(*n.fun, env);
          const Handle a = eval(*n.arg, env);
          return apply(f, a, span);
        } else if constexpr (std::is_same_v<T, ast::Cond>) {
          const Scalar t = force_scalar(eval(*n.test, env));
          const bool* b = std::get_if<bool>(&t);
          if (!b)
            fail(ErrorKind::ShapeMismatch, "Cond",
                 std::string("condition must be a boolean, found ") + scalar_kind(t));
          return eval(*b ? *n.then_branch : *n.else_branch, env);
        } else if constexpr (std::is_same_v<T, ast::Letrec>) {
          const Handle p = bind_recursive(n.name, *n.bound, env);
          return eval(*n.body, env.bind(n.name, p));
        } else if constexpr (std::is_same_v<T, ast::BinOp>) {
          return eval_binop(n, env, span);
        } else if constexpr (std::is_same_v<T, ast::ArrayLiteral>) {
          return eval_array(n, env);
        } else if constexpr (std::is_same_v<T, ast::Select>) {
          const Handle a = eval(*n.array, env);
          const Index i = to_index(eval(*n.index, env), "Sel");
          return select(a, i);
        } else if constexpr (std::is_same_v<T, ast::Shape>) {
          return index_cell(shape_of(eval(*n.arg, env)));
        } else if constexpr (std::is_same_v<T, ast::Reduce>) {
          return eval_reduce(n, env, span);
        } else if constexpr (std::is_same_v<T, ast::Imap>) {
          return eval_imap(n, env, span);
        } else if constexpr (std::is_same_v<T, ast::Filter>) {
          return eval_filter(n, env, span);
        } else {
          static_assert(std::is_same_v<T, ast::IsLim>);
          const Scalar s = force_scalar(eval(*n.arg, env));
          const Ordinal* o = std::get_if<Ordinal>(&s);
          if (!o)
            fail(ErrorKind::IrreducibleTerm, "IsLim",
                 std::string("islim needs an ordinal, found ") + scalar_kind(s));
          return scalar_cell(is_limit(*o));
        }
      },
      e.node);
}

Handle Evaluator::bind_recursive(const std::string& name, const ast::Expr& bound,
                                 const Env& env) {
  const Handle p = store_.insert(Bottom{});
  Handle p2;
  {
    CounterGuard guard(letrec_depth_);
    p2 = eval(bound, env.bind(name, p));
  }
  // Every environment captured while evaluating `bound` reaches p2 via p.
  if (p2 != p) store_.overwrite(p, Alias{p2});
  return p2;
}

Handle Evaluator::apply(Handle fun, Handle arg, const SourceSpan& span) {
  const Value& v = store_.at(fun);
  FunPtr fn;
  if (const auto* a = std::get_if<StrictArray>(&v); a && a->is_scalar()) {
    if (const auto* f = std::get_if<FunPtr>(&a->data[0])) fn = *f;
  } else if (!std::get_if<StrictArray>(&v) && shape_of(fun).empty()) {
    Scalar s = force_scalar(fun);
    if (auto* f = std::get_if<FunPtr>(&s)) fn = *f;
  }
  if (!fn) {
    std::string what;
    const Index s = shape_of(fun);
    if (!s.empty())
      what = "an array of shape " + format_index(s);
    else
      what = scalar_kind(force_scalar(fun));
    throw EvalError(ErrorKind::NotAFunction, "App", "cannot apply " + what, span, true);
  }
  return eval(*fn->body, fn->env.bind(fn->param, arg));
}

Handle Evaluator::eval_binop(const ast::BinOp& op, const Env& env, const SourceSpan&) {
  const Scalar l = force_scalar(eval(*op.lhs, env));
  const Scalar r = force_scalar(eval(*op.rhs, env));
  const Ordinal* a = std::get_if<Ordinal>(&l);
  const Ordinal* b = std::get_if<Ordinal>(&r);
  if (op.op == ast::BinOpKind::Eq) {
    if (a && b) return scalar_cell(*a == *b);
    const bool* x = std::get_if<bool>(&l);
    const bool* y = std::get_if<bool>(&r);
    if (x && y) return scalar_cell(*x == *y);
    fail(ErrorKind::IrreducibleTerm, "BinOp",
         std::string("cannot compare ") + scalar_kind(l) + " with " + scalar_kind(r));
  }
  if (!a || !b)
    fail(ErrorKind::IrreducibleTerm, "BinOp",
         "operator '" + std::string(ast::spelling(op.op)) + "' needs ordinals, found " +
             scalar_kind(l) + " and " + scalar_kind(r));
  switch (op.op) {
    case ast::BinOpKind::Add: return scalar_cell(*a + *b);
    case ast::BinOpKind::Sub: {
      auto d = ord_sub_left(*a, *b);
      if (!d)
        fail(ErrorKind::UndefinedOrdinalOp, "BinOp",
             a->to_string() + " - " + b->to_string() + " is undefined");
      return scalar_cell(std::move(d).value());
    }
    case ast::BinOpKind::Mul: return scalar_cell(*a * *b);
    case ast::BinOpKind::Div:
    case ast::BinOpKind::Mod: {
      auto qr = ord_divmod(*a, *b);
      if (!qr)
        fail(ErrorKind::DivisionByZero, "BinOp", "division of " + a->to_string() + " by zero");
      return scalar_cell(op.op == ast::BinOpKind::Div ? qr->quotient : qr->remainder);
    }
    case ast::BinOpKind::Lt: return scalar_cell(*a < *b);
    case ast::BinOpKind::Le: return scalar_cell(*a <= *b);
    case ast::BinOpKind::Gt: return scalar_cell(*a > *b);
    case ast::BinOpKind::Ge: return scalar_cell(*a >= *b);
    case ast::BinOpKind::Eq: break;
  }
  fail(ErrorKind::IrreducibleTerm, "BinOp", "unknown operator");
}

Handle Evaluator::eval_array(const ast::ArrayLiteral& lit, const Env& env) {
  const auto n = static_cast<std::uint64_t>(lit.elements.size());
  if (n == 0) return store_.insert(StrictArray{{Ordinal(0)}, {}});
  std::vector<Handle> elems;
  elems.reserve(n);
  for (const auto& e : lit.elements) elems.push_back(eval(*e, env));
  const Index cell = shape_of(elems[0]);
  for (std::size_t k = 1; k < elems.size(); ++k) {
    const Index s = shape_of(elems[k]);
    if (s != cell)
      fail(ErrorKind::HeterogeneousNesting, "Imm-Array",
           "array elements have shapes " + format_index(cell) + " and " + format_index(s));
  }
  if (all_finite(cell)) {
    StrictArray out{concat({Ordinal(n)}, cell), {}};
    for (Handle h : elems) {
      StrictArray part = force_strict(h);
      for (Scalar& s : part.data) out.data.push_back(std::move(s));
    }
    return store_.insert(std::move(out));
  }
  // Elements of transfinite shape stay lazy behind pre-memoized indices.
  auto c = std::make_unique<ImapClosure>();
  c->frame = {Ordinal(n)};
  c->cell = cell;
  for (std::uint64_t k = 0; k < n; ++k) c->memo[{Ordinal(k)}] = elems[k];
  return store_.insert(std::move(c));
}

Handle Evaluator::eval_imap(const ast::Imap& im, const Env& env, const SourceSpan& span) {
  const Index frame = to_index(eval(*im.frame, env), "IMap");
  const Index cell = im.cell ? to_index(eval(*im.cell, env), "IMap") : Index{};
  const Index zero(frame.size(), Ordinal(0));
  const Box whole{zero, frame};

  std::vector<Box> boxes;
  std::vector<ImapRule> rules;
  for (const ast::Partition& p : im.partitions) {
    Box b;
    if (p.gen.full) {
      b = whole;
    } else {
      b.lower = to_index(eval(*p.gen.lower, env), "Gen");
      b.upper = to_index(eval(*p.gen.upper, env), "Gen");
      if (b.lower.size() != frame.size() || b.upper.size() != frame.size())
        throw EvalError(ErrorKind::RankMismatch, "Gen",
                        "generator bounds " + format_index(b.lower) + " and " +
                            format_index(b.upper) + " do not match frame rank " +
                            std::to_string(frame.size()),
                        p.gen.span, true);
      for (std::size_t k = 0; k < frame.size(); ++k)
        if (b.upper[k] < b.lower[k])
          throw EvalError(ErrorKind::NotAPartition, "Gen",
                          "generator lower bound " + format_index(b.lower) +
                              " exceeds upper bound " + format_index(b.upper),
                          p.gen.span, true);
    }
    boxes.push_back(std::move(b));
    rules.push_back({p.gen.var, p.body});
  }
  if (!forms_partition(whole, boxes))
    fail(ErrorKind::NotAPartition, "IMap",
         "generators do not partition the frame " + format_index(frame));

  const Index full_shape = concat(frame, cell);
  if (config_.strict_finite_imaps && letrec_depth_ == 0 &&
      element_count(full_shape, kStrictElementLimit)) {
    const std::size_t count = *element_count(frame);
    StrictArray out{full_shape, {}};
    for (std::size_t off = 0; off < count; ++off) {
      const Index i = delinearize(frame, off);
      std::size_t k = 0;
      while (!boxes[k].contains(i)) ++k;
      ++stats_.imap_body_evaluations;
      const Handle r = eval(*rules[k].body, env.bind(rules[k].var, index_cell(i)));
      const Index s = shape_of(r);
      if (s != cell)
        fail(ErrorKind::ShapeMismatch, "IMap-Strict",
             "element at " + format_index(i) + " has shape " + format_index(s) +
                 ", expected cell shape " + format_index(cell));
      StrictArray part = force_strict(r);
      for (Scalar& x : part.data) out.data.push_back(std::move(x));
    }
    return store_.insert(std::move(out));
  }

  auto c = std::make_unique<ImapClosure>();
  c->frame = frame;
  c->cell = cell;
  c->rules = std::move(rules);
  c->env = env;
  c->span = span;
  for (std::size_t k = 0; k < boxes.size(); ++k)
    if (!boxes[k].empty()) c->pending.push_back({std::move(boxes[k]), k});
  return store_.insert(std::move(c));
}

Handle Evaluator::eval_reduce(const ast::Reduce& r, const Env& env, const SourceSpan& span) {
  const Handle f = eval(*r.fun, env);
  Handle acc = eval(*r.neutral, env);
  const Handle a = eval(*r.array, env);
  const Index s = shape_of(a);
  if (!all_finite(s))
    fail(ErrorKind::ReduceOnInfinite, "Reduce",
         "cannot reduce an array of shape " + format_index(s));
  const StrictArray data = force_strict(a);
  for (const Scalar& x : data.data) acc = apply(apply(f, acc, span), scalar_cell(x), span);
  return acc;
}

Handle Evaluator::eval_filter(const ast::Filter& f, const Env& env, const SourceSpan& span) {
  const Handle p = eval(*f.pred, env);
  const Handle a = eval(*f.array, env);
  const Index s = shape_of(a);
  if (s.size() != 1)
    fail(ErrorKind::FilterRankError, "Filter",
         "filter needs a vector, found shape " + format_index(s));
  if (s[0].is_natural()) {
    const std::uint64_t n = s[0].to_u64();
    StrictArray out{{Ordinal(0)}, {}};
    for (std::uint64_t k = 0; k < n; ++k) {
      const Handle e = select(a, {Ordinal(k)});
      if (predicate(p, e, span)) out.data.push_back(force_scalar(e));
    }
    out.shape[0] = Ordinal(static_cast<std::uint64_t>(out.data.size()));
    return store_.insert(std::move(out));
  }
  auto c = std::make_unique<FilterClosure>();
  c->predicate = p;
  c->argument = a;
  c->extent = s[0];
  c->span = span;
  return store_.insert(std::move(c));
}

bool Evaluator::predicate(Handle pred, Handle element, const SourceSpan& span) {
  ++stats_.filter_predicate_calls;
  const Scalar r = force_scalar(apply(pred, element, span));
  const bool* b = std::get_if<bool>(&r);
  if (!b)
    fail(ErrorKind::ShapeMismatch, "Filter",
         std::string("predicate must return a boolean, returned ") + scalar_kind(r));
  return *b;
}

Handle Evaluator::select(Handle array, const Index& index) {
  const Handle h = store_.resolve(array);
  Value& v = store_.raw(h);
  if (auto* a = std::get_if<StrictArray>(&v)) {
    if (a->is_scalar() && index.empty()) return h;
    return scalar_cell(a->data[linearize(a->shape, index)]);
  }
  if (auto* c = std::get_if<std::unique_ptr<ImapClosure>>(&v)) return select_imap(h, **c, index);
  if (auto* f = std::get_if<std::unique_ptr<FilterClosure>>(&v))
    return select_filter(h, **f, index);
  fail(ErrorKind::IrreducibleTerm, "Sel", "selection from a value that is not an array");
}

Handle Evaluator::select_imap(Handle, ImapClosure& c, const Index& index) {
  const std::size_t m = c.frame.size();
  const Index shape = concat(c.frame, c.cell);
  if (index.size() != shape.size())
    fail(ErrorKind::RankMismatch, "Sel-lazy-imap",
         "index " + format_index(index) + " has rank " + std::to_string(index.size()) +
             ", array has shape " + format_index(shape));
  for (std::size_t k = 0; k < shape.size(); ++k)
    if (!(index[k] < shape[k]))
      fail(ErrorKind::IndexOutOfBounds, "Sel-lazy-imap",
           "index " + format_index(index) + " outside shape " + format_index(shape));
  const Index i(index.begin(), index.begin() + static_cast<std::ptrdiff_t>(m));
  const Index j(index.begin() + static_cast<std::ptrdiff_t>(m), index.end());

  if (auto it = c.memo.find(i); it != c.memo.end())
    return j.empty() ? it->second : select(it->second, j);

  auto hit = std::find_if(c.pending.begin(), c.pending.end(),
                          [&](const PendingBox& p) { return p.box.contains(i); });
  if (hit == c.pending.end())
    fail(ErrorKind::NotAPartition, "Sel-lazy-imap",
         "no partition covers index " + format_index(i));
  // Copies: evaluating the body may split `pending` under us.
  const ImapRule rule = c.rules[hit->rule];
  const Index cell = c.cell;

  ++stats_.imap_body_evaluations;
  const Handle r = eval(*rule.body, c.env.bind(rule.var, index_cell(i)));
  const Index s = shape_of(r);
  if (s != cell)
    fail(ErrorKind::ShapeMismatch, "Sel-lazy-imap",
         "element at " + format_index(i) + " has shape " + format_index(s) +
             ", expected cell shape " + format_index(cell));
  if (config_.memoize) update_imap(c, i, r);
  return j.empty() ? r : select(r, j);
}

void Evaluator::update_imap(ImapClosure& c, const Index& i, Handle result) {
  if (c.memo.count(i)) return;
  auto hit = std::find_if(c.pending.begin(), c.pending.end(),
                          [&](const PendingBox& p) { return p.box.contains(i); });
  if (hit == c.pending.end()) return;
  const std::size_t rule = hit->rule;
  std::vector<Box> rest = box_subtract(hit->box, Box{i, successor(i)});
  const auto pos = c.pending.erase(hit) - c.pending.begin();
  std::vector<PendingBox> pieces;
  for (Box& b : rest) pieces.push_back({std::move(b), rule});
  c.pending.insert(c.pending.begin() + pos, pieces.begin(), pieces.end());
  c.memo.emplace(i, result);
}

Handle Evaluator::select_filter(Handle, FilterClosure& f, const Index& index) {
  if (index.size() != 1)
    fail(ErrorKind::RankMismatch, "Filter",
         "filter results are vectors; index " + format_index(index) + " has rank " +
             std::to_string(index.size()));
  const LimitPart at = limit_part(index[0]);
  const LimitPart end = limit_part(f.extent);
  if (end.limit < at.limit || (at.limit == end.limit && end.finite == 0))
    fail(ErrorKind::IndexOutOfBounds, "Filter",
         "index " + format_index(index) + " outside the filtered vector");
  std::optional<Natural> length;
  if (at.limit == end.limit) length = end.finite;
  const std::size_t n = small(at.finite, "Filter", "index");

  FilterSegment scratch;
  FilterSegment& seg = config_.memoize ? f.segments[at.limit] : scratch;
  scan_segment(f, seg, at.limit, length, n, std::nullopt);
  if (seg.accepted.size() <= n)
    fail(ErrorKind::IndexOutOfBounds, "Filter",
         "index " + format_index(index) + " outside the filtered vector");
  return seg.accepted[n];
}

void Evaluator::scan_segment(FilterClosure& f, FilterSegment& seg, const Ordinal& start,
                             const std::optional<Natural>& length, std::size_t n,
                             std::optional<std::size_t> budget) {
  std::size_t calls = 0;
  while (seg.accepted.size() <= n) {
    if (length && seg.scanned >= *length) return;
    if (budget && calls >= *budget) return;
    const Ordinal pos = start + Ordinal(seg.scanned);
    const Handle e = select(f.argument, {pos});
    ++calls;
    const bool keep = predicate(f.predicate, e, f.span);
    if (keep) seg.accepted.push_back(e);
    seg.scanned += 1;
  }
}

Index Evaluator::filter_shape(FilterClosure& f) {
  const LimitPart end = limit_part(f.extent);
  if (end.finite == 0) return {end.limit};
  FilterSegment scratch;
  FilterSegment& seg = config_.memoize ? f.segments[end.limit] : scratch;
  scan_segment(f, seg, end.limit, end.finite, SIZE_MAX - 1, std::nullopt);
  return {end.limit + Ordinal(static_cast<std::uint64_t>(seg.accepted.size()))};
}

std::vector<Handle> Evaluator::filter_peek(Handle filter, const Ordinal& start, std::size_t want,
                                           std::size_t budget) {
  auto* fp = std::get_if<std::unique_ptr<FilterClosure>>(&store_.at(filter));
  if (!fp) return {};
  FilterClosure& f = **fp;
  const LimitPart end = limit_part(f.extent);
  std::optional<Natural> length;
  if (start == end.limit) length = end.finite;
  FilterSegment scratch;
  FilterSegment& seg = config_.memoize ? f.segments[start] : scratch;
  if (want > 0) scan_segment(f, seg, start, length, want - 1, budget);
  std::vector<Handle> out(seg.accepted.begin(),
                          seg.accepted.begin() +
                              static_cast<std::ptrdiff_t>(std::min(want, seg.accepted.size())));
  return out;
}

Index Evaluator::shape_of(Handle h) {
  Value& v = store_.at(h);
  if (auto* a = std::get_if<StrictArray>(&v)) return a->shape;
  if (auto* c = std::get_if<std::unique_ptr<ImapClosure>>(&v))
    return concat((*c)->frame, (*c)->cell);
  if (auto* f = std::get_if<std::unique_ptr<FilterClosure>>(&v)) return filter_shape(**f);
  fail(ErrorKind::IrreducibleTerm, "Shape", "value has no shape");
}

Scalar Evaluator::force_scalar(Handle h) {
  Value& v = store_.at(h);
  if (auto* a = std::get_if<StrictArray>(&v)) {
    if (a->is_scalar()) return a->data[0];
    fail(ErrorKind::ShapeMismatch, "Sel",
         "expected a scalar, found an array of shape " + format_index(a->shape));
  }
  const Index s = shape_of(h);
  if (!s.empty())
    fail(ErrorKind::ShapeMismatch, "Sel",
         "expected a scalar, found an array of shape " + format_index(s));
  return force_scalar(select(h, {}));
}

StrictArray Evaluator::force_strict(Handle h) {
  if (auto* a = std::get_if<StrictArray>(&store_.at(h))) return *a;
  const Index s = shape_of(h);
  const auto count = element_count(s);
  if (!count)
    fail(ErrorKind::ReduceOnInfinite, "Sel",
         "cannot force an array of shape " + format_index(s));
  StrictArray out{s, {}};
  out.data.reserve(*count);
  for (std::size_t off = 0; off < *count; ++off)
    out.data.push_back(force_scalar(select(h, delinearize(s, off))));
  return out;
}

Index Evaluator::to_index(Handle h, const char* rule) {
  const Index s = shape_of(h);
  if (s.size() != 1 || !s[0].is_natural())
    fail(ErrorKind::ShapeMismatch, rule,
         "expected an index vector, found shape " + format_index(s));
  Index out;
  auto push = [&](const Scalar& x) {
    const Ordinal* o = std::get_if<Ordinal>(&x);
    if (!o)
      fail(ErrorKind::IrreducibleTerm, rule,
           std::string("index components must be ordinals, found ") + scalar_kind(x));
    out.push_back(*o);
  };
  if (auto* a = std::get_if<StrictArray>(&store_.at(h))) {
    for (const Scalar& x : a->data) push(x);
    return out;
  }
  const std::uint64_t n = s[0].to_u64();
  for (std::uint64_t k = 0; k < n; ++k) push(force_scalar(select(h, {Ordinal(k)})));
  return out;
}

}  // namespace heh::eval
