#pragma once

#include <cstdint>
#include <optional>

#include "heh/runtime/value.hpp"
#include "heh/syntax/ast.hpp"

namespace heh::eval {

using runtime::Env;
using runtime::Handle;
using runtime::Index;
using runtime::Scalar;
using runtime::Store;

struct EvalConfig {
  bool strict_finite_imaps = false;
  bool memoize = true;
  std::optional<std::uint64_t> fuel;  // rule applications per top-level request
  std::size_t max_depth = 400000;     // nested evaluation frames
};

struct EvalStats {
  std::uint64_t rule_applications = 0;
  std::uint64_t imap_body_evaluations = 0;
  std::uint64_t filter_predicate_calls = 0;
};

// Big-step evaluator over a caller-owned store. Single-threaded.
class Evaluator {
 public:
  Evaluator(Store& store, EvalConfig config) : store_(store), config_(config) {}

  Handle eval(const syntax::Expr& e, const Env& env);

  Handle apply(Handle fun, Handle arg, const SourceSpan& span);
  Handle select(Handle array, const Index& index);
  Index shape_of(Handle h);
  // Value of a shape-[] array, forcing a lazy scalar if needed.
  Scalar force_scalar(Handle h);
  // Fully evaluated copy of a finite-shaped value.
  runtime::StrictArray force_strict(Handle h);
  // A finite vector of ordinals, as used for shapes and indices.
  Index to_index(Handle h, const char* rule);

  // Evaluates `x = e` where `x` may occur in `e`; returns the bound handle.
  Handle bind_recursive(const std::string& name, const syntax::Expr& bound, const Env& env);

  // Scans a filter closure segment without committing more than `budget`
  // predicate calls; returns the accepted prefix. Used by printing.
  std::vector<Handle> filter_peek(Handle filter, const Ordinal& start, std::size_t want,
                                  std::size_t budget);

  const EvalConfig& config() const noexcept { return config_; }
  EvalConfig& config() noexcept { return config_; }
  const EvalStats& stats() const noexcept { return stats_; }
  void reset_stats() { stats_ = {}; }
  // Refills the fuel tank from the configured budget.
  void refuel() { remaining_fuel_ = config_.fuel; }
  std::optional<std::uint64_t> remaining_fuel() const noexcept { return remaining_fuel_; }
  void set_remaining_fuel(std::optional<std::uint64_t> f) noexcept { remaining_fuel_ = f; }

  Store& store() noexcept { return store_; }

 private:
  Store& store_;
  EvalConfig config_;
  EvalStats stats_;
  std::optional<std::uint64_t> remaining_fuel_;
  std::size_t depth_ = 0;
  std::size_t letrec_depth_ = 0;

  Handle scalar_cell(Scalar s);
  Handle index_cell(const Index& i);
  void charge(const SourceSpan& span);

  Handle eval_node(const syntax::Expr& e, const Env& env);
  Handle eval_binop(const syntax::BinOp& op, const Env& env, const SourceSpan& span);
  Handle eval_array(const syntax::ArrayLiteral& lit, const Env& env);
  Handle eval_imap(const syntax::Imap& im, const Env& env, const SourceSpan& span);
  Handle eval_reduce(const syntax::Reduce& r, const Env& env, const SourceSpan& span);
  Handle eval_filter(const syntax::Filter& f, const Env& env, const SourceSpan& span);

  Handle select_imap(Handle h, runtime::ImapClosure& c, const Index& index);
  Handle select_filter(Handle h, runtime::FilterClosure& f, const Index& index);
  void update_imap(runtime::ImapClosure& c, const Index& frame_index, Handle result);
  Index filter_shape(runtime::FilterClosure& f);
  bool predicate(Handle pred, Handle element, const SourceSpan& span);
  // Extends `seg` (starting at `start`) until it holds more than `n` elements
  // or the scan budget / segment end is reached.
  void scan_segment(runtime::FilterClosure& f, runtime::FilterSegment& seg,
                    const Ordinal& start, const std::optional<Natural>& length,
                    std::size_t n, std::optional<std::size_t> budget);
};

}  // namespace heh::eval
