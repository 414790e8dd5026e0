#include "plumbroot/poly.hpp"

#include <sstream>

namespace plumbroot {

namespace {

Rational frac_part(const Rational& q) { return q - Rational(q.floor()); }

}  // namespace

void TwoVarPoly::adopt_frac(const Rational& frac) {
  if (terms_.empty()) {
    frac_ = frac;
  } else if (frac != frac_) {
    throw Error(ErrorKind::MalformedInput,
                "q-exponents with fractional parts " + frac_.str() + " and " + frac.str() +
                    " cannot share a polynomial");
  }
}

void TwoVarPoly::add(const Rational& q, std::int64_t t, const Rational& c) {
  add_shifted(frac_part(q), q.floor(), t, c);
}

void TwoVarPoly::add_shifted(const Rational& frac, std::int64_t q_int, std::int64_t t,
                             const Rational& c) {
  if (c.is_zero()) return;
  adopt_frac(frac);
  auto [it, inserted] = terms_.try_emplace({q_int, t}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TwoVarPoly& TwoVarPoly::operator+=(const TwoVarPoly& o) {
  if (o.terms_.empty()) return *this;
  for (const auto& [key, c] : o.terms_) add_shifted(o.frac_, key.first, key.second, c);
  return *this;
}

TwoVarPoly& TwoVarPoly::operator-=(const TwoVarPoly& o) {
  for (const auto& [key, c] : o.terms_) add_shifted(o.frac_, key.first, key.second, -c);
  return *this;
}

Rational TwoVarPoly::coefficient(const Rational& q, std::int64_t t) const {
  if (terms_.empty() || frac_part(q) != frac_) return Rational(0);
  auto it = terms_.find({q.floor(), t});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<TwoVarPoly::Term> TwoVarPoly::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.push_back({frac_ + Rational(key.first), key.second, c});
  return out;
}

TwoVarPoly TwoVarPoly::truncated(const Rational& q_max) const {
  TwoVarPoly r;
  for (const auto& [key, c] : terms_) {
    if (frac_ + Rational(key.first) <= q_max) r.add_shifted(frac_, key.first, key.second, c);
  }
  return r;
}

TwoVarPoly TwoVarPoly::t_inverted() const {
  TwoVarPoly r;
  for (const auto& [key, c] : terms_) r.add_shifted(frac_, key.first, -key.second, c);
  return r;
}

TwoVarPoly TwoVarPoly::at_t1() const {
  TwoVarPoly r;
  for (const auto& [key, c] : terms_) r.add_shifted(frac_, key.first, 0, c);
  return r;
}

Rational TwoVarPoly::at_one() const {
  Rational acc;
  for (const auto& [key, c] : terms_) acc += c;
  return acc;
}

std::string TwoVarPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms()) {
    Rational c = term.c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = c.sign() < 0 ? -c : c;
    bool has_var = term.t != 0 || !term.q.is_zero();
    bool wrote = false;
    if (mag != Rational(1) || !has_var) {
      os << mag.str();
      wrote = true;
    }
    if (term.t != 0) {
      os << (wrote ? "*" : "") << "t";
      if (term.t != 1) os << "^" << (term.t < 0 ? "(" + std::to_string(term.t) + ")" : std::to_string(term.t));
      wrote = true;
    }
    if (!term.q.is_zero()) {
      os << (wrote ? "*" : "") << "q";
      if (term.q != Rational(1)) {
        bool plain = term.q.is_integer() && term.q.sign() > 0;
        os << "^" << (plain ? term.q.str() : "(" + term.q.str() + ")");
      }
    }
  }
  return os.str();
}

std::string TwoVarPoly::key() const {
  std::string out = "[";
  bool first = true;
  for (const auto& term : terms()) {
    if (!first) out += ";";
    first = false;
    out += term.q.str() + "," + std::to_string(term.t) + "," + term.c.str();
  }
  return out + "]";
}

}  // namespace plumbroot
