#include "heh/eval/session.hpp"

#include <pthread.h>

#include <exception>

#include "heh/prelude.hpp"
#include "heh/syntax/parser.hpp"

namespace heh::eval {

namespace {

constexpr std::size_t kStackBytes = std::size_t{1} << 30;

thread_local bool t_on_big_stack = false;

struct ThreadCall {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* thread_main(void* arg) {
  auto* call = static_cast<ThreadCall*>(arg);
  t_on_big_stack = true;
  try {
    (*call->fn)();
  } catch (...) {
    call->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_on_big_stack(const std::function<void()>& fn) {
  if (t_on_big_stack) {
    fn();
    return;
  }
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  ThreadCall call{&fn, nullptr};
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, thread_main, &call);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();  // no thread available; run with the stack we have
    return;
  }
  pthread_join(thread, nullptr);
  if (call.error) std::rethrow_exception(call.error);
}

Session::Session(EvalConfig config, bool load_prelude)
    : evaluator_(store_, std::move(config)) {
  if (load_prelude) {
    const auto saved = evaluator_.config().fuel;
    evaluator_.config().fuel.reset();
    run(prelude_source());
    evaluator_.config().fuel = saved;
    evaluator_.reset_stats();
  }
}

std::optional<Handle> Session::run(std::string_view source) {
  const syntax::Program prog = syntax::parse_program(source);
  return request([&]() -> std::optional<Handle> {
    for (const syntax::Binding& b : prog.bindings) {
      Handle h = b.recursive ? evaluator_.bind_recursive(b.name, *b.value, env_)
                             : evaluator_.eval(*b.value, env_);
      env_ = env_.bind(b.name, h);
    }
    if (!prog.result) return std::nullopt;
    return evaluator_.eval(*prog.result, env_);
  });
}

Handle Session::eval(std::string_view expression) {
  const syntax::ExprPtr e = syntax::parse_expression(expression);
  return request([&] { return evaluator_.eval(*e, env_); });
}

Index Session::parse_index(std::string_view text) {
  const syntax::ExprPtr e = syntax::parse_expression(text);
  return request([&] { return evaluator_.to_index(evaluator_.eval(*e, env_), "Sel"); });
}

Scalar Session::probe(Handle h, const Index& index) {
  return request([&] { return evaluator_.force_scalar(evaluator_.select(h, index)); });
}

Index Session::shape(Handle h) {
  return request([&] { return evaluator_.shape_of(h); });
}

Scalar Session::scalar(Handle h) {
  return request([&] { return evaluator_.force_scalar(h); });
}

Evaluated evaluate(std::string_view source, const EvalConfig& config, bool load_prelude) {
  auto session = std::make_shared<Session>(config, load_prelude);
  auto h = session->run(source);
  if (!h)
    throw EvalError(ErrorKind::IrreducibleTerm, "", "program has no result expression");
  return {session, *h};
}

Scalar probe(const Evaluated& result, const Index& index) {
  return result.session->probe(result.value, index);
}

}  // namespace heh::eval
