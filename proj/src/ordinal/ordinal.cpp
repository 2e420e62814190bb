#include "heh/ordinal.hpp"

#include <cassert>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace heh {

namespace {

OrdinalError undefined(std::string msg) {
  return OrdinalError{OrdinalErrc::Undefined, std::move(msg)};
}

Cmp compare_nat(const Natural& a, const Natural& b) {
  if (a < b) return Cmp::LT;
  if (b < a) return Cmp::GT;
  return Cmp::EQ;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back(Term{0, Natural(n)});
}

Ordinal::Ordinal(const Natural& n) {
  if (n < 0) {
    throw OrdinalException({OrdinalErrc::Malformed, "negative natural"});
  }
  if (n != 0) terms_.push_back(Term{0, n});
}

Ordinal Ordinal::omega_power(const Natural& exponent, const Natural& coefficient) {
  Ordinal r;
  if (exponent < 0 || coefficient < 0) {
    throw OrdinalException({OrdinalErrc::Malformed, "negative exponent or coefficient"});
  }
  if (coefficient != 0) r.terms_.push_back(Term{exponent, coefficient});
  return r;
}

bool is_canonical(const std::vector<Term>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1 || terms[i].exponent < 0) return false;
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) return false;
  }
  return true;
}

Expected<Ordinal> Ordinal::from_terms(std::vector<Term> terms) {
  if (!is_canonical(terms)) {
    return OrdinalError{OrdinalErrc::Malformed,
                        "terms are not in Cantor normal form"};
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_natural() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

bool Ordinal::is_limit() const noexcept {
  return !terms_.empty() && terms_.back().exponent != 0;
}

std::optional<Natural> Ordinal::as_natural() const {
  if (terms_.empty()) return Natural(0);
  if (!is_natural()) return std::nullopt;
  return terms_[0].coefficient;
}

std::uint64_t Ordinal::to_u64() const {
  auto n = as_natural();
  if (!n) {
    throw OrdinalException({OrdinalErrc::Malformed, to_string() + " is not a natural number"});
  }
  if (*n > std::numeric_limits<std::uint64_t>::max()) {
    throw OrdinalException({OrdinalErrc::Malformed, to_string() + " does not fit in 64 bits"});
  }
  return n->convert_to<std::uint64_t>();
}

Natural Ordinal::leading_exponent() const {
  return terms_.empty() ? Natural(0) : terms_.front().exponent;
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent == 0) {
      out += t.coefficient.str();
      continue;
    }
    out += 'w';
    if (t.exponent != 1) out += "^" + t.exponent.str();
    if (t.coefficient != 1) out += "*" + t.coefficient.str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) {
  return os << a.to_string();
}

Cmp ord_cmp(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare_nat(x[i].exponent, y[i].exponent); c != Cmp::EQ) return c;
    if (auto c = compare_nat(x[i].coefficient, y[i].coefficient); c != Cmp::EQ) return c;
  }
  if (x.size() == y.size()) return Cmp::EQ;
  return x.size() < y.size() ? Cmp::LT : Cmp::GT;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  switch (ord_cmp(a, b)) {
    case Cmp::LT: return std::strong_ordering::less;
    case Cmp::GT: return std::strong_ordering::greater;
    case Cmp::EQ: break;
  }
  return std::strong_ordering::equal;
}

// Terms of `a` below the leading exponent of `b` are absorbed.
Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Natural& lead = b.terms_.front().exponent;
  Ordinal r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  for (const auto& t : a.terms_) {
    if (t.exponent < lead) break;
    r.terms_.push_back(t);
  }
  auto it = b.terms_.begin();
  if (!r.terms_.empty() && r.terms_.back().exponent == lead) {
    r.terms_.back().coefficient += it->coefficient;
    ++it;
  }
  r.terms_.insert(r.terms_.end(), it, b.terms_.end());
  return r;
}

Expected<Ordinal> ord_sub_left(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
  Ordinal r;
  if (i == y.size()) {
    // b is a prefix of a
    r.terms_.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    return r;
  }
  if (i == x.size()) {
    return undefined(a.to_string() + " - " + b.to_string() + " is undefined");
  }
  if (x[i].exponent > y[i].exponent) {
    r.terms_.assign(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    return r;
  }
  if (x[i].exponent == y[i].exponent && x[i].coefficient > y[i].coefficient) {
    r.terms_.push_back(Term{x[i].exponent, x[i].coefficient - y[i].coefficient});
    r.terms_.insert(r.terms_.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end());
    return r;
  }
  return undefined(a.to_string() + " - " + b.to_string() + " is undefined");
}

// x + b = a forces: the terms of a below b's leading exponent equal b's tail,
// and a's term at that exponent covers b's leading coefficient. Terms of x
// below the leading exponent are absorbed, so the least x has none.
Expected<Ordinal> ord_sub_right(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Term& lead = b.terms_.front();
  const auto& x = a.terms_;
  std::size_t k = 0;
  while (k < x.size() && x[k].exponent > lead.exponent) ++k;
  auto fail = [&] {
    return undefined("no x satisfies x + " + b.to_string() + " = " + a.to_string());
  };
  if (k == x.size() || x[k].exponent != lead.exponent || x[k].coefficient < lead.coefficient) {
    return fail();
  }
  if (x.size() - k != b.terms_.size()) return fail();
  for (std::size_t j = 1; j < b.terms_.size(); ++j) {
    if (!(x[k + j] == b.terms_[j])) return fail();
  }
  Ordinal r;
  r.terms_.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
  if (x[k].coefficient > lead.coefficient) {
    r.terms_.push_back(Term{lead.exponent, x[k].coefficient - lead.coefficient});
  }
  return r;
}

// a * (w^f * d): for f = 0 the leading coefficient of a scales by d and the
// tail of a is kept; for f > 0 the product collapses to w^(e1 + f) * d.
Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal{};
  const Term& lead = a.terms_.front();
  Ordinal r;
  for (const auto& t : b.terms_) {
    Ordinal piece;
    if (t.exponent == 0) {
      piece.terms_ = a.terms_;
      piece.terms_.front().coefficient = lead.coefficient * t.coefficient;
    } else {
      piece.terms_.push_back(Term{lead.exponent + t.exponent, t.coefficient});
    }
    r = ord_add(r, piece);
  }
  return r;
}

// Leading-term long division.
Expected<DivMod> ord_divmod(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) {
    return OrdinalError{OrdinalErrc::DivisionByZero,
                        "division of " + a.to_string() + " by zero"};
  }
  const Term& bl = b.terms().front();
  Ordinal q;
  Ordinal r = a;
  while (ord_cmp(r, b) != Cmp::LT) {
    const Term& rl = r.terms().front();
    Ordinal step;
    if (rl.exponent > bl.exponent) {
      // b * w^g = w^(eb + g), so b * (w^g * c) = w^er * c exactly.
      step = Ordinal::omega_power(rl.exponent - bl.exponent, rl.coefficient);
    } else {
      Natural k = rl.coefficient / bl.coefficient;
      if (ord_cmp(ord_mul(b, Ordinal(k)), r) == Cmp::GT) k -= 1;
      step = Ordinal(k);
    }
    Ordinal taken = ord_mul(b, step);
    r = ord_sub_left(r, taken).value();
    q = ord_add(q, step);
  }
#ifndef NDEBUG
  assert(ord_add(ord_mul(b, q), r) == a);
#endif
  return DivMod{std::move(q), std::move(r)};
}

bool is_limit(const Ordinal& a) { return a.is_limit(); }
bool is_natural(const Ordinal& a) { return a.is_natural(); }

LimitPart limit_part(const Ordinal& a) {
  const auto& t = a.terms();
  if (!t.empty() && t.back().exponent == 0) {
    std::vector<Term> head(t.begin(), t.end() - 1);
    return LimitPart{Ordinal::from_terms(std::move(head)).value(), t.back().coefficient};
  }
  return LimitPart{a, 0};
}

namespace {

class OrdinalTextParser {
 public:
  explicit OrdinalTextParser(std::string_view s) : s_(s) {}

  Expected<Ordinal> run() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) return fail("empty ordinal literal");
    while (true) {
      auto term = parse_term();
      if (!term) return fail(err_);
      if (term->coefficient != 0) {
        if (!terms.empty() && !(term->exponent < terms.back().exponent)) {
          return fail("terms must have strictly descending exponents");
        }
        terms.push_back(std::move(*term));
      } else if (!terms.empty() || !at_end_after_ws()) {
        return fail("zero is only valid as the whole literal");
      }
      skip_ws();
      if (at_end()) break;
      if (s_[pos_] != '+') return fail("expected '+'");
      ++pos_;
      skip_ws();
    }
    return Ordinal::from_terms(std::move(terms));
  }

 private:
  std::optional<Term> parse_term() {
    if (peek() == 'w') {
      ++pos_;
      Term t{1, 1};
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        auto e = parse_nat();
        if (!e) return std::nullopt;
        t.exponent = *e;
        skip_ws();
      }
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        auto c = parse_nat();
        if (!c) return std::nullopt;
        if (*c == 0) {
          err_ = "zero coefficient";
          return std::nullopt;
        }
        t.coefficient = *c;
      }
      return t;
    }
    auto n = parse_nat();
    if (!n) return std::nullopt;
    return Term{0, *n};
  }

  std::optional<Natural> parse_nat() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) {
      err_ = "expected a number";
      return std::nullopt;
    }
    return Natural(std::string(s_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= s_.size(); }
  bool at_end_after_ws() {
    std::size_t save = pos_;
    skip_ws();
    bool end = at_end();
    pos_ = save;
    return end;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  Expected<Ordinal> fail(const std::string& why) {
    return OrdinalError{OrdinalErrc::Malformed,
                        "bad ordinal literal '" + std::string(s_) + "': " + why};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::string err_;
};

}  // namespace

Expected<Ordinal> parse_ordinal(std::string_view text) {
  return OrdinalTextParser(text).run();
}

}  // namespace heh
