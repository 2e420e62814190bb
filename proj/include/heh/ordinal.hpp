#pragma once

// Ordinals below w^w in Cantor Normal Form.
//
// An ordinal is a finite sum w^e1*c1 + ... + w^ek*ck with strictly
// descending natural exponents and positive coefficients. The empty sum is 0
// and a trailing exponent-0 term is the finite part. Naturals are the
// ordinals with at most one term, of exponent 0.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace heh {

using Natural = boost::multiprecision::cpp_int;

struct Term {
  Natural exponent;
  Natural coefficient;

  bool operator==(const Term&) const = default;
};

enum class OrdinalErrc {
  Undefined,       // partial operation has no result (e.g. 1 - 2, w -R 42)
  DivisionByZero,
  Malformed,       // terms violate CNF, or text does not parse
};

struct OrdinalError {
  OrdinalErrc code;
  std::string message;
};

class OrdinalException : public std::runtime_error {
 public:
  explicit OrdinalException(OrdinalError e)
      : std::runtime_error(e.message), error_(std::move(e)) {}
  const OrdinalError& error() const noexcept { return error_; }

 private:
  OrdinalError error_;
};

// Result of a partial ordinal operation: a value or a typed error.
template <class T>
class Expected {
 public:
  Expected(T value) : state_(std::move(value)) {}
  Expected(OrdinalError error) : state_(std::move(error)) {}

  bool has_value() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const& {
    if (!has_value()) throw OrdinalException(error());
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!has_value()) throw OrdinalException(error());
    return std::get<0>(std::move(state_));
  }
  const OrdinalError& error() const { return std::get<1>(state_); }

  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, OrdinalError> state_;
};

class Ordinal {
 public:
  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT: naturals are ordinals
  explicit Ordinal(const Natural& n);

  static Ordinal omega() { return omega_power(1); }
  static Ordinal omega_power(const Natural& exponent,
                             const Natural& coefficient = 1);
  // Validates the CNF invariants.
  static Expected<Ordinal> from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_natural() const noexcept;
  bool is_limit() const noexcept;
  std::optional<Natural> as_natural() const;
  // Throws OrdinalException when the ordinal is not a natural or does not fit.
  std::uint64_t to_u64() const;

  // Degree of the leading term; 0 for zero and for naturals.
  Natural leading_exponent() const;

  // Rendered as `w^2*3 + w*2 + 5`; zero renders as `0`.
  std::string to_string() const;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;

  friend Ordinal ord_add(const Ordinal&, const Ordinal&);
  friend Expected<Ordinal> ord_sub_left(const Ordinal&, const Ordinal&);
  friend Expected<Ordinal> ord_sub_right(const Ordinal&, const Ordinal&);
  friend Ordinal ord_mul(const Ordinal&, const Ordinal&);
};

enum class Cmp { LT, EQ, GT };

struct DivMod {
  Ordinal quotient;
  Ordinal remainder;
};

struct LimitPart {
  Ordinal limit;   // limit ordinal or zero
  Natural finite;  // trailing natural offset
};

Cmp ord_cmp(const Ordinal& a, const Ordinal& b);
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
// The unique x with b + x = a; Undefined when b > a.
Expected<Ordinal> ord_sub_left(const Ordinal& a, const Ordinal& b);
// The least x with x + b = a; Undefined when no such x exists.
Expected<Ordinal> ord_sub_right(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
// a = b*q + r with r < b.
Expected<DivMod> ord_divmod(const Ordinal& a, const Ordinal& b);

bool is_limit(const Ordinal& a);
bool is_natural(const Ordinal& a);
LimitPart limit_part(const Ordinal& a);

// Parses the rendered CNF form (`w^2*3 + w + 4`, `0`, `17`). Whitespace
// between tokens is ignored. Terms must be strictly descending.
Expected<Ordinal> parse_ordinal(std::string_view text);

// Checks the CNF invariants of a raw term sequence.
bool is_canonical(const std::vector<Term>& terms);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return ord_mul(a, b); }

std::ostream& operator<<(std::ostream& os, const Ordinal& a);

}  // namespace heh
