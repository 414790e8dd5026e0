#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plumbroot/rational.hpp"

namespace plumbroot {

// Finite sum of c q^e t^j with rational e, integer j and rational c. All
// q-exponents of one polynomial share a fractional part, so terms are keyed
// by the integer part of e.
class TwoVarPoly {
 public:
  struct Term {
    Rational q;
    std::int64_t t;
    Rational c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  TwoVarPoly() = default;

  // Adds c q^q t^t.
  void add(const Rational& q, std::int64_t t, const Rational& c);
  // Adds c q^(frac + q_int) t^t where frac is the shared fractional part.
  void add_shifted(const Rational& frac, std::int64_t q_int, std::int64_t t, const Rational& c);

  TwoVarPoly& operator+=(const TwoVarPoly& o);
  TwoVarPoly& operator-=(const TwoVarPoly& o);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Rational& frac() const noexcept { return frac_; }

  Rational coefficient(const Rational& q, std::int64_t t) const;
  // Sorted by (q, t).
  std::vector<Term> terms() const;

  // Terms with q <= q_max.
  TwoVarPoly truncated(const Rational& q_max) const;
  // t -> 1/t.
  TwoVarPoly t_inverted() const;
  // Sum of coefficients grouped by q (t = 1), as a polynomial with t = 0.
  TwoVarPoly at_t1() const;
  // Value at q = t = 1.
  Rational at_one() const;

  // Readable form, e.g. "-2*q^(-1/2) + t*q^(1/2)"; "0" when empty.
  std::string str() const;
  // Compact unambiguous serialization for codes and hashing.
  std::string key() const;

  friend bool operator==(const TwoVarPoly& a, const TwoVarPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
    return a.frac_ == b.frac_ && a.terms_ == b.terms_;
  }

 private:
  void adopt_frac(const Rational& frac);

  Rational frac_;
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> terms_;
};

}  // namespace plumbroot
