#include <doctest.h>

#include <random>

#include "heh/ordinal.hpp"
#include "ordinal_support.hpp"

using heh::Cmp;
using heh::Natural;
using heh::Ordinal;
using heh::testing::Dense;
using heh::testing::random_ordinal;

namespace {

const Ordinal w = Ordinal::omega();

Ordinal O(std::string_view text) { return heh::parse_ordinal(text).value(); }

void check_canonical(const Ordinal& a) { CHECK(heh::is_canonical(a.terms())); }

}  // namespace

TEST_CASE("comparison follows CNF order") {
  CHECK(heh::ord_cmp(Ordinal(2) + w, w + Ordinal(2)) == Cmp::LT);
  CHECK(heh::ord_cmp(Ordinal(0), Ordinal(0)) == Cmp::EQ);
  CHECK(heh::ord_cmp(O("w^2"), O("w*3")) == Cmp::GT);
}

TEST_CASE("comparison agrees with brute-force lexicographic order up to w^2*3") {
  // Every ordinal c2*w^2 + c1*w + c0 with c_i <= 3, as a fixed-length tuple.
  std::vector<std::array<int, 3>> tuples;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c) tuples.push_back({a, b, c});
  auto to_ord = [](const std::array<int, 3>& t) {
    return Ordinal::omega_power(2, 1) * Ordinal(t[0]) + w * Ordinal(t[1]) + Ordinal(t[2]);
  };
  for (const auto& x : tuples) {
    for (const auto& y : tuples) {
      Cmp expected = x < y ? Cmp::LT : (x == y ? Cmp::EQ : Cmp::GT);
      REQUIRE(heh::ord_cmp(to_ord(x), to_ord(y)) == expected);
    }
  }
}

TEST_CASE("addition absorbs lower terms") {
  CHECK(Ordinal(2) + w == w);
  CHECK(w + Ordinal(2) == O("w + 2"));
  CHECK(w + Ordinal(2) != w);
  CHECK(O("w^2*3 + w + 4") + O("w*2 + 1") == O("w^2*3 + w*3 + 1"));
  CHECK(O("w + 5") + O("w^3") == O("w^3"));
  for (const char* x : {"0", "7", "w", "w^4*2 + 9"}) CHECK(Ordinal(0) + O(x) == O(x));
}

TEST_CASE("left subtraction") {
  CHECK(heh::ord_sub_left(w, Ordinal(1)).value() == w);
  CHECK(heh::ord_sub_left(Ordinal(7), Ordinal(3)).value() == Ordinal(4));
  CHECK(heh::ord_sub_left(O("w^2 + w*3"), O("w*5")).value() == O("w^2 + w*3"));
  CHECK(heh::ord_sub_left(O("w*2 + 1"), w).value() == O("w + 1"));
  CHECK_FALSE(heh::ord_sub_left(Ordinal(1), Ordinal(2)).has_value());
  CHECK(heh::ord_sub_left(Ordinal(1), Ordinal(2)).error().code == heh::OrdinalErrc::Undefined);
  for (const char* x : {"0", "3", "w^2 + 1"})
    CHECK(heh::ord_sub_left(O(x), O(x)).value() == Ordinal(0));
}

TEST_CASE("left subtraction matches a brute-force search over naturals") {
  const Ordinal a = O("w + 42"), b = O("w + 2");
  std::optional<Ordinal> found;
  for (std::uint64_t n = 0; n <= 100 && !found; ++n)
    if (b + Ordinal(n) == a) found = Ordinal(n);
  REQUIRE(found);
  CHECK(*found == Ordinal(40));
  CHECK(heh::ord_sub_left(a, b).value() == *found);
}

TEST_CASE("right subtraction") {
  CHECK(heh::ord_sub_right(w, w).value() == Ordinal(0));
  CHECK_FALSE(heh::ord_sub_right(w, Ordinal(42)).has_value());
  CHECK(heh::ord_sub_right(O("w + 5"), Ordinal(5)).value() == w);
  CHECK(heh::ord_sub_right(Ordinal(9), Ordinal(4)).value() == Ordinal(5));
  CHECK(heh::ord_sub_right(O("w^2 + w*3 + 2"), O("w + 2")).value() == O("w^2 + w*2"));
  CHECK_FALSE(heh::ord_sub_right(O("w^2 + 1"), O("w + 1")).has_value());
  CHECK_FALSE(heh::ord_sub_right(Ordinal(1), Ordinal(2)).has_value());
}

TEST_CASE("right subtraction is the least solution within a brute-force box") {
  // Candidates: every ordinal w^2*a + w*b + c with a,b,c <= 4.
  std::vector<Ordinal> box;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        box.push_back(O("w^2") * Ordinal(a) + w * Ordinal(b) + Ordinal(c));
  std::sort(box.begin(), box.end());
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 400; ++iter) {
    const Ordinal& xi = box[rng() % box.size()];
    const Ordinal b = random_ordinal(rng, 2, 2, 4);
    const Ordinal a = xi + b;
    std::optional<Ordinal> least;
    for (const Ordinal& cand : box) {
      if (cand + b == a) {
        least = cand;
        break;
      }
    }
    REQUIRE(least);
    auto got = heh::ord_sub_right(a, b);
    REQUIRE(got.has_value());
    CHECK(got.value() == *least);
  }
  // The witness from the right-subtraction example.
  const Ordinal a = O("w + 5");
  for (const Ordinal& cand : box) {
    if (cand > a) break;
    if (cand + Ordinal(5) == a) {
      CHECK(cand == w);
      break;
    }
  }
}

TEST_CASE("multiplication") {
  CHECK(Ordinal(2) * w == w);
  CHECK(w * Ordinal(2) == O("w*2"));
  CHECK(Ordinal(2) * w != w * Ordinal(2));
  CHECK((w + Ordinal(1)) * w == O("w^2"));
  CHECK((w + Ordinal(1)) * w != w * w + w);  // right distributivity fails
  CHECK((w + Ordinal(1)) * Ordinal(3) == O("w*3 + 1"));
  CHECK(O("w^2 + w") * O("w^3 + 2") == O("w^5 + w^2*2 + w"));
  for (const char* x : {"0", "5", "w", "w^3*2 + w + 1"}) {
    CHECK(O(x) * Ordinal(1) == O(x));
    CHECK(Ordinal(1) * O(x) == O(x));
    CHECK(O(x) * Ordinal(0) == Ordinal(0));
  }
}

TEST_CASE("division with remainder") {
  auto dm = [](const Ordinal& a, const Ordinal& b) { return heh::ord_divmod(a, b).value(); };
  CHECK(dm(w + Ordinal(5), w).quotient == Ordinal(1));
  CHECK(dm(w + Ordinal(5), w).remainder == Ordinal(5));
  CHECK(dm(Ordinal(17), Ordinal(5)).quotient == Ordinal(3));
  CHECK(dm(Ordinal(17), Ordinal(5)).remainder == Ordinal(2));
  CHECK(heh::ord_divmod(Ordinal(3), Ordinal(0)).error().code ==
        heh::OrdinalErrc::DivisionByZero);

  const Ordinal a = O("w*2 + 7");
  auto r = dm(a, w);
  CHECK(r.quotient == Ordinal(2));
  CHECK(r.remainder == Ordinal(7));
  CHECK(w * r.quotient + r.remainder == a);
  CHECK(r.remainder < w);
}

TEST_CASE("islim, is_natural and limit_part") {
  CHECK(heh::is_limit(w));
  CHECK_FALSE(heh::is_limit(Ordinal(0)));
  CHECK_FALSE(heh::is_limit(O("w*2 + 1")));
  CHECK(heh::is_limit(O("w^2 + w")));
  CHECK(heh::is_natural(Ordinal(42)));
  CHECK_FALSE(heh::is_natural(w));
  CHECK_FALSE(heh::is_natural(O("w + 3")));

  auto lp = heh::limit_part(O("w*2 + 5"));
  CHECK(lp.limit == O("w*2"));
  CHECK(lp.finite == 5);
  lp = heh::limit_part(Ordinal(7));
  CHECK(lp.limit == Ordinal(0));
  CHECK(lp.finite == 7);
  lp = heh::limit_part(w);
  CHECK(lp.limit == w);
  CHECK(lp.finite == 0);
}

TEST_CASE("text form round-trips") {
  for (const char* s : {"0", "1", "w", "w^2*3 + w*2 + 5", "w^7", "w*2", "w^3 + 1"})
    CHECK(O(s).to_string() == s);
  CHECK(O("w^2*3+4").to_string() == "w^2*3 + 4");
  CHECK(O("123456789012345678901234567890").to_string() == "123456789012345678901234567890");
  for (const char* bad : {"", "w + w", "1 + w", "w*0", "w^", "w^1*1 + 0", "x", "0 + 1", "w*1*2"})
    CHECK_FALSE(heh::parse_ordinal(bad).has_value());
}

TEST_CASE("from_terms rejects non-canonical sequences") {
  using heh::Term;
  CHECK_FALSE(Ordinal::from_terms({{1, 2}, {1, 3}}).has_value());
  CHECK_FALSE(Ordinal::from_terms({{0, 2}, {1, 3}}).has_value());
  CHECK_FALSE(Ordinal::from_terms({{1, 0}}).has_value());
  CHECK(Ordinal::from_terms({{2, 1}, {0, 4}}).has_value());
}

TEST_CASE("operations agree with the dense coefficient model") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 3000; ++iter) {
    const Ordinal a = random_ordinal(rng, 4, 5, 1000);
    const Ordinal b = random_ordinal(rng, 4, 5, 1000);
    const Dense da = Dense::of(a), db = Dense::of(b);
    const int c = compare(da, db);
    CHECK(heh::ord_cmp(a, b) == (c < 0 ? Cmp::LT : c == 0 ? Cmp::EQ : Cmp::GT));
    const Ordinal s = a + b, p = a * b;
    check_canonical(s);
    check_canonical(p);
    CHECK(s == add(da, db).to_ordinal());
    CHECK(p == mul(da, db).to_ordinal());
  }
}

TEST_CASE("algebraic laws on random triples") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 2000; ++iter) {
    const Ordinal a = random_ordinal(rng, 4, 5, 1000000);
    const Ordinal b = random_ordinal(rng, 4, 5, 1000000);
    const Ordinal c = random_ordinal(rng, 4, 5, 1000000);
    REQUIRE(a + (b + c) == (a + b) + c);
    REQUIRE(a * (b * c) == (a * b) * c);
    REQUIRE(a * (b + c) == a * b + a * c);
    if (a + b == a + c) REQUIRE(b == c);
    const Ordinal lo = std::min(a, b), hi = std::max(a, b);
    auto d = heh::ord_sub_left(hi, lo);
    REQUIRE(d.has_value());
    check_canonical(d.value());
    REQUIRE(lo + d.value() == hi);
    if (!b.is_zero()) {
      auto qr = heh::ord_divmod(a, b);
      REQUIRE(qr.has_value());
      check_canonical(qr->quotient);
      check_canonical(qr->remainder);
      REQUIRE(b * qr->quotient + qr->remainder == a);
      REQUIRE(qr->remainder < b);
    }
    if (auto r = heh::ord_sub_right(a, b)) {
      check_canonical(r.value());
      REQUIRE(r.value() + b == a);
    }
  }
}

TEST_CASE("agreement with machine arithmetic on naturals") {
  auto check_pair = [](std::uint64_t x, std::uint64_t y) {
    const Ordinal a(x), b(y);
    REQUIRE((a + b).to_u64() == x + y);
    REQUIRE((a * b).to_u64() == x * y);
    REQUIRE(heh::ord_cmp(a, b) == (x < y ? Cmp::LT : x == y ? Cmp::EQ : Cmp::GT));
    auto l = heh::ord_sub_left(a, b);
    auto r = heh::ord_sub_right(a, b);
    REQUIRE(l.has_value() == (y <= x));
    REQUIRE(r.has_value() == (y <= x));
    if (y <= x) {
      REQUIRE(l.value().to_u64() == x - y);
      REQUIRE(r.value().to_u64() == x - y);
    }
    if (y != 0) {
      auto qr = heh::ord_divmod(a, b).value();
      REQUIRE(qr.quotient.to_u64() == x / y);
      REQUIRE(qr.remainder.to_u64() == x % y);
    }
  };
  for (std::uint64_t x = 0; x < 200; ++x)
    for (std::uint64_t y = 0; y < 200; ++y) check_pair(x, y);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> d(0, 9999);
  for (int i = 0; i < 50000; ++i) check_pair(d(rng), d(rng));
}

TEST_CASE("huge coefficients stay exact") {
  const Natural big = Natural(1) << 200;
  const Ordinal a = Ordinal::omega_power(1, big);
  CHECK((a + a).terms().front().coefficient == big * 2);
  CHECK_THROWS_AS(Ordinal(big).to_u64(), heh::OrdinalException);
}
