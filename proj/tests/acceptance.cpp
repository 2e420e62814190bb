// Acceptance checks for the interpreter. Prints one PASS/FAIL line per
// criterion and exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "heh/syntax/parser.hpp"
#include "laws_support.hpp"
#include "ordinal_support.hpp"
#include "syntax_support.hpp"

using namespace heh;
using namespace heh::testing;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
  std::vector<std::string> notes;  // extra measurements, not part of the verdict

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string program_text(const std::string& name) {
  std::ifstream in(std::string(HEH_SOURCE_DIR) + "/programs/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string program_bindings(const std::string& name) {
  // Drops the trailing result line so the program only defines names.
  std::string text = program_text(name);
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text.substr(0, text.rfind('\n') + 1);
}

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const Error& e) {
    v.require(false, "unexpected error: " + e.render());
  } catch (const std::exception& e) {
    v.require(false, std::string("unexpected exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit_seconds);
  if (secs >= limit_seconds) v.require(false, std::string("too slow: ") + timing);
  if (!v.ok) ++failures;
  std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " ("
            << timing << ")";
  if (!v.ok) std::cout << "\n      reason: " << v.detail;
  std::cout << '\n';
  for (const auto& n : v.notes) std::cout << "      note: " << n << '\n';
  std::cout.flush();
}

bool exact(const Ordinal& a, const Ordinal& b) { return a == b; }

void ordinal_laws(Verdict& v) {
  const Ordinal w = Ordinal::omega(), two = 2, one = 1;
  v.require(ord_add(two, w) == w && ord_add(w, two) != w, "2 + w = w != w + 2");
  v.require(ord_mul(two, w) == w && ord_mul(w, two) != w, "2*w = w != w*2");
  v.require(ord_mul(ord_add(w, one), w) == Ordinal::omega_power(2), "(w + 1)*w = w^2");

  std::mt19937_64 rng(2024);
  const int n = 100000;
  std::size_t checked_sub = 0, checked_div = 0;
  for (int i = 0; i < n && v.ok; ++i) {
    const Ordinal a = random_ordinal(rng, 4, 5, 1000000);
    const Ordinal b = random_ordinal(rng, 4, 5, 1000000);
    const Ordinal c = random_ordinal(rng, 4, 5, 1000000);
    const std::string at = " at a=" + a.to_string() + ", b=" + b.to_string() + ", c=" + c.to_string();
    v.require(exact(ord_add(ord_add(a, b), c), ord_add(a, ord_add(b, c))), "additive associativity" + at);
    v.require(exact(ord_mul(ord_mul(a, b), c), ord_mul(a, ord_mul(b, c))),
              "multiplicative associativity" + at);
    v.require(exact(ord_mul(a, ord_add(b, c)), ord_add(ord_mul(a, b), ord_mul(a, c))),
              "left distributivity" + at);
    // Left cancellation: a + b = a + c exactly when b = c.
    v.require((ord_add(a, b) == ord_add(a, c)) == (b == c), "left cancellation" + at);
    auto diff = ord_sub_left(ord_add(a, b), a);
    v.require(diff.has_value() && *diff == b, "left cancellation by subtraction" + at);
    if (b <= a) {
      ++checked_sub;
      auto d = ord_sub_left(a, b);
      v.require(d.has_value() && ord_add(b, *d) == a, "subtraction round trip" + at);
    } else {
      v.require(!ord_sub_left(a, b).has_value(), "subtraction defined below its argument" + at);
    }
    if (!b.is_zero()) {
      ++checked_div;
      auto qr = ord_divmod(a, b);
      v.require(qr.has_value() && ord_add(ord_mul(b, qr->quotient), qr->remainder) == a &&
                    qr->remainder < b,
                "division theorem" + at);
    }
  }
  v.notes.push_back(std::to_string(n) + " triples; subtraction round trip on " +
                    std::to_string(checked_sub) + ", division on " + std::to_string(checked_div));
}

void golden_examples(Verdict& v) {
  Session s;
  auto expect = [&](const std::string& src, const std::string& want) {
    const std::string got = show(s, src);
    v.require(got == want, src + " printed " + got + ", expected " + want);
  };
  expect("reduce (\\x.\\y.x+y) 0 [[1,2],[3,4]]", "10");
  expect("|[]|", "[0]");
  expect("|[[]]|", "[1, 0]");
  expect("|42|", "[]");
  expect("|true|", "[]");
  expect("imap [3,3] {_(iv): iv.[0]*3 + iv.[1]}",
         "<imap shape=[3, 3]> [[0, 1, 2], [3, 4, 5], [6, 7, 8]]");
  expect("(\\x.x) 42", "42");
  expect("[[1,2],[3,4]].[1,1]", "4");
  v.require(error_of("[[1,2],[3,4]].[1]").has_value(), "[[1,2],[3,4]].[1] must be undefined");

  const auto nats = *s.run(program_text("nats.heh"));
  for (int k : {0, 1, 5, 40})
    v.require(probe_text(s, nats, "[" + std::to_string(k) + "]") == std::to_string(k),
              "nats.[" + std::to_string(k) + "]");
  const auto count = *s.run(program_text("countdown.heh"));
  for (int k = 0; k < 10; ++k)
    v.require(probe_text(s, count, "[" + std::to_string(k) + "]") == std::to_string(k),
              "countdown a.[" + std::to_string(k) + "]");
  s.run("let a = imap [w + 42] {_(iv): iv.[0] * 3 + 1}");
  const auto t = *s.run("tail a");
  const auto a = *s.run("a");
  v.require(probe_text(s, t, "[w]") == probe_text(s, a, "[w]"), "(tail a).[w] = a.[w]");
  v.require(probe_text(s, t, "[w + 5]") == probe_text(s, a, "[w + 5]"), "(tail a).[w+5] = a.[w+5]");
  v.require(probe_text(s, t, "[0]") == probe_text(s, a, "[1]"), "(tail a).[0] = a.[1]");
}

void equalities(Verdict& v) {
  Rng rng(99);
  Session s;
  Outcome o;
  const int n = 1000;
  for (int i = 0; i < n && o.ok; ++i) eq1_finite(s, rng, o);
  for (int i = 0; i < n && o.ok; ++i) eq2_finite(s, rng, o);
  for (int i = 0; i < n && o.ok; ++i) eq3_finite(s, rng, o);
  for (int i = 0; i < n && o.ok; ++i) applicative_finite(s, rng, o);
  for (int i = 0; i < n && o.ok; ++i) filter_map_finite(s, rng, o);
  const std::size_t finite = o.comparisons;
  eq1_transfinite(s, o);
  eq2_transfinite(s, o);
  eq3_transfinite(s, o);
  applicative_transfinite(s, rng, o);
  v.require(o.ok, o.detail);
  v.notes.push_back(std::to_string(finite) + " finite comparisons, " +
                    std::to_string(o.comparisons - finite) + " transfinite probe comparisons");
}

void ackermann_in_data(Verdict& v) {
  const std::string defs = program_bindings("ackermann.heh");
  {
    Session s;
    s.run(defs);
    const auto h = *s.run("ack");
    for (std::uint64_t m = 0; m <= 3; ++m)
      for (std::uint64_t k = 0; k <= 3; ++k) {
        const std::string idx = "[" + std::to_string(m) + ", " + std::to_string(k) + "]";
        v.require(probe_text(s, h, idx) == std::to_string(ackermann(m, k)), "ack" + idx);
      }
  }
  auto rules_for = [&](bool memo, const std::string& index, std::optional<std::uint64_t> fuel,
                       std::string& value) {
    EvalConfig c;
    c.memoize = memo;
    c.fuel = fuel;
    Session s(c);
    const auto h = *s.run(defs + "ack");
    s.reset_stats();
    try {
      value = probe_text(s, h, index);
    } catch (const EvalError& e) {
      if (e.kind() != ErrorKind::FuelExhausted) throw;
      value = "FuelExhausted";
    }
    return s.stats().rule_applications;
  };
  const std::uint64_t budget = 1000000;
  std::string memo_value, plain_value;
  const auto memo_rules = rules_for(true, "[3, 3]", budget, memo_value);
  const auto plain_rules = rules_for(false, "[3, 3]", budget, plain_value);
  v.require(memo_value == "61", "memoized [3,3] gave " + memo_value);
  v.require(plain_value == "61" || plain_value == "FuelExhausted", "no-memo [3,3] gave " + plain_value);
  v.require(plain_value == "FuelExhausted",
            "without memoization [3,3] completes in " + std::to_string(plain_rules) +
                " rule applications, which is within the fuel of 10^6 (memoized: " +
                std::to_string(memo_rules) + ")");
  std::string big_memo, big_plain;
  const auto big_memo_rules = rules_for(true, "[3, 5]", budget, big_memo);
  const auto big_plain_rules = rules_for(false, "[3, 5]", budget, big_plain);
  v.notes.push_back("[3,3]: " + std::to_string(memo_rules) + " rules memoized, " +
                    std::to_string(plain_rules) + " without memoization");
  v.notes.push_back("[3,5] under fuel 10^6: memoized " + big_memo + " after " +
                    std::to_string(big_memo_rules) + " rules, without memoization " + big_plain +
                    " after " + std::to_string(big_plain_rules) + " rules");
}

void game_of_life(Verdict& v) {
  Session s;
  s.run(program_bindings("game_of_life.heh"));
  Outcome o;
  life_matches(s, blinker(), 4, o);
  life_matches(s, glider(), 4, o);
  life_plane_matches(s, glider(), 2, 10, o);
  life_plane_matches(s, blinker(), 2, 10, o);
  v.require(o.ok, o.detail);
}

void filter_semantics(Verdict& v) {
  Rng rng(7);
  Session s;
  for (int i = 0; i < 1000 && v.ok; ++i) {
    std::vector<std::uint64_t> xs(rng() % 15);
    for (auto& x : xs) x = rng() % 50;
    const std::uint64_t m = 1 + rng() % 5, r = rng() % m;
    std::vector<std::uint64_t> kept;
    for (auto x : xs)
      if (x % m == r) kept.push_back(x);
    const std::string src =
        "filter (\\x. x % " + std::to_string(m) + " = " + std::to_string(r) + ") " + nat_vector(xs);
    v.require(show(s, src) == nat_vector(kept), src);
  }
  const auto evens = *s.run(program_text("evens.heh"));
  for (std::uint64_t k = 0; k < 200; k += 7)
    v.require(probe_text(s, evens, "[" + std::to_string(k) + "]") == std::to_string(2 * k),
              "evens.[" + std::to_string(k) + "]");
  auto shape = [&](const std::string& src) { return runtime::format_index(s.shape(*s.run(src))); };
  v.require(shape("filter (\\x. x % 3 = 0) (imap [w] {_(iv): iv.[0]})") == "[w]", "[w] -> [w]");
  v.require(shape("filter (\\x. false) (imap [w] {_(iv): iv.[0]})") == "[w]", "[w] -> [w], empty");
  v.require(shape("filter (\\x. x % 2 = 0) (imap [w*2] {_(iv): iv.[0]})") == "[w*2]", "[w*2] -> [w*2]");
  v.require(shape("filter (\\x. x = w + 1) (imap [w + 3] {_(iv): iv.[0]})") == "[w + 1]",
            "[w+3] with one trailing acceptance -> [w+1]");
  EvalConfig c;
  c.fuel = 1000000;
  Session bounded(c);
  const auto k =
      kind_of([&] { bounded.run("(filter (\\x. x > 0) (imap [w + 2] {_(iv): 0})).[0]"); });
  v.require(k == ErrorKind::FuelExhausted, "selection into an effectively empty filter must exhaust fuel");
}

void config_coherence(Verdict& v) {
  std::size_t runs = 0;
  for (const Golden& g : golden_programs()) {
    const auto base = probe_all(g, config_of(false, true));
    for (bool strict : {false, true})
      for (bool memo : {false, true}) {
        if (strict && g.recursive) continue;
        ++runs;
        v.require(probe_all(g, config_of(strict, memo)) == base,
                  g.name + " differs with strict=" + std::to_string(strict) +
                      " memo=" + std::to_string(memo));
      }
  }
  v.notes.push_back(std::to_string(golden_programs().size()) + " programs, " + std::to_string(runs) +
                    " configuration runs");
}

void parser_round_trip(Verdict& v) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000 && v.ok; ++i) {
    const auto e = random_expr(rng, 5);
    const std::string once = syntax::print(*e);
    try {
      const std::string twice = syntax::print(*syntax::parse_expression(once));
      v.require(once == twice, "printed " + once + " reprinted as " + twice);
    } catch (const Error& err) {
      v.require(false, err.render() + " in " + once);
    }
  }
}

}  // namespace

int main() {
  criterion(1, "ordinal laws on random CNF triples, exact", 30, ordinal_laws);
  criterion(2, "worked examples reproduce exactly", 10, golden_examples);
  criterion(3, "equality properties on finite instances and transfinite probes", 60, equalities);
  criterion(4, "Ackermann as data; memoization effect under fuel 10^6", 20, ackermann_in_data);
  criterion(5, "Game of Life against a direct simulator", 30, game_of_life);
  criterion(6, "filter semantics", 60, filter_semantics);
  criterion(7, "configuration coherence over strict/lazy and memo/no-memo", 60, config_coherence);
  criterion(8, "1000 generated ASTs survive print, parse, print", 60, parser_round_trip);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << '\n';
  return failures ? 1 : 0;
}
