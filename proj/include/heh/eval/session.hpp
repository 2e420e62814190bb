#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "heh/eval/evaluator.hpp"

namespace heh::eval {

// Runs `fn` on a thread with a large stack so deeply nested evaluation does
// not overflow the caller's stack. Nested calls run inline.
void run_on_big_stack(const std::function<void()>& fn);

template <class F>
auto on_big_stack(F&& fn) -> decltype(fn()) {
  using R = decltype(fn());
  if constexpr (std::is_void_v<R>) {
    run_on_big_stack(std::function<void()>(std::forward<F>(fn)));
  } else {
    std::optional<R> out;
    run_on_big_stack([&] { out.emplace(fn()); });
    return std::move(*out);
  }
}

std::string render_scalar(const Scalar& s);

// One interpreter session: a store, the top-level environment and an
// evaluator. Bindings made by `run` persist across calls.
class Session {
 public:
  explicit Session(EvalConfig config = {}, bool load_prelude = true);

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Evaluates a program; `let`/`letrec` items extend the environment.
  // Returns the value of the trailing expression, if any.
  std::optional<Handle> run(std::string_view source);
  Handle eval(std::string_view expression);

  // Parses and evaluates an index literal such as `[3, w+1]`.
  Index parse_index(std::string_view text);

  Scalar probe(Handle h, const Index& index);
  Scalar probe(Handle h, std::string_view index) { return probe(h, parse_index(index)); }
  Index shape(Handle h);
  Scalar scalar(Handle h);
  // Lazy values show their shape and at most `force_elements` elements per
  // infinite axis segment.
  std::string render(Handle h, std::size_t force_elements = 10);

  EvalConfig& config() noexcept { return evaluator_.config(); }
  const EvalStats& stats() const noexcept { return evaluator_.stats(); }
  void reset_stats() { evaluator_.reset_stats(); }
  Evaluator& evaluator() noexcept { return evaluator_; }
  const Env& env() const noexcept { return env_; }
  std::size_t store_size() const noexcept { return store_.size(); }

 private:
  Store store_;
  Evaluator evaluator_;
  Env env_;

  template <class F>
  auto request(F&& fn) {
    evaluator_.refuel();
    return on_big_stack(std::forward<F>(fn));
  }
};

// Convenience for harnesses: evaluates `source` in a fresh session.
struct Evaluated {
  std::shared_ptr<Session> session;
  Handle value;
};

Evaluated evaluate(std::string_view source, const EvalConfig& config = {},
                   bool load_prelude = true);
Scalar probe(const Evaluated& result, const Index& index);

}  // namespace heh::eval
