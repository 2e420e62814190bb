#pragma once

// Random CNF generation and a dense coefficient-vector model of ordinals
// below w^w used as an independent oracle.

#include <algorithm>
#include <random>
#include <vector>

#include "heh/ordinal.hpp"

namespace heh::testing {

inline Ordinal random_ordinal(std::mt19937_64& rng, int max_terms, int max_exp,
                              std::uint64_t max_coef) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<std::uint64_t> coef(1, max_coef);
  std::vector<int> exps;
  const int n = std::min(nterms(rng), max_exp + 1);
  while (static_cast<int>(exps.size()) < n) {
    int e = exp(rng);
    if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(e);
  }
  std::sort(exps.rbegin(), exps.rend());
  std::vector<Term> terms;
  for (int e : exps) terms.push_back({Natural(e), Natural(coef(rng))});
  return Ordinal::from_terms(std::move(terms)).value();
}

// Dense model: coefficient of w^i at position i.
struct Dense {
  std::vector<Natural> c;

  static Dense of(const Ordinal& a) {
    Dense d;
    for (const Term& t : a.terms()) {
      auto e = static_cast<std::size_t>(t.exponent);
      if (d.c.size() <= e) d.c.resize(e + 1);
      d.c[e] = t.coefficient;
    }
    return d;
  }

  int degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      if (c[i] != 0) return i;
    return -1;
  }

  Natural at(int i) const { return i < static_cast<int>(c.size()) ? c[i] : Natural(0); }

  Ordinal to_ordinal() const {
    std::vector<Term> terms;
    for (int i = degree(); i >= 0; --i)
      if (c[i] != 0) terms.push_back({Natural(i), c[i]});
    return Ordinal::from_terms(std::move(terms)).value();
  }

  // Lexicographic from the top degree down.
  friend int compare(const Dense& a, const Dense& b) {
    const int top = std::max(a.degree(), b.degree());
    for (int i = top; i >= 0; --i) {
      if (a.at(i) != b.at(i)) return a.at(i) < b.at(i) ? -1 : 1;
    }
    return 0;
  }

  // Everything of `a` below the leading degree of `b` is absorbed.
  friend Dense add(const Dense& a, const Dense& b) {
    const int d = b.degree();
    if (d < 0) return a;
    Dense r;
    r.c.resize(std::max<std::size_t>(a.c.size(), b.c.size()));
    for (int i = 0; i < static_cast<int>(r.c.size()); ++i) {
      if (i > d) r.c[i] = a.at(i);
      else if (i == d) r.c[i] = a.at(i) + b.at(i);
      else r.c[i] = b.at(i);
    }
    return r;
  }

  // a * w^e * k, summed over the terms of b from the top (left distributivity).
  friend Dense mul(const Dense& a, const Dense& b) {
    const int da = a.degree();
    if (da < 0) return Dense{};
    Dense acc;
    for (int e = b.degree(); e >= 0; --e) {
      const Natural k = b.at(e);
      if (k == 0) continue;
      Dense part;
      if (e == 0) {
        // (w^da*c + rest) * k = w^da*(c*k) + rest
        part = a;
        part.c[da] = a.c[da] * k;
      } else {
        part.c.assign(da + e + 1, 0);
        part.c[da + e] = k;
      }
      acc = add(acc, part);
    }
    return acc;
  }
};

}  // namespace heh::testing
