#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "plumbroot/admissible.hpp"
#include "plumbroot/core.hpp"
#include "plumbroot/poly.hpp"
#include "plumbroot/rational.hpp"
#include "plumbroot/root.hpp"
#include "plumbroot/spinc.hpp"

namespace plumbroot {

// Truncated two-variable series. Every term with q-exponent <= q_limit is
// present and final; q_limit = Delta + complete_to for the representative used.
struct TwoVarSeries {
  TwoVarPoly poly;
  Rational complete_to;
  Rational q_limit;
};

struct QSeries {
  std::map<Rational, Rational> terms;  // exponent -> nonzero coefficient
  Rational complete_to;
  Rational q_limit;

  std::string str() const;
};

// Both arguments cut at the smaller q_limit, then compared exactly.
bool series_equal(const TwoVarSeries& a, const TwoVarSeries& b);
bool series_equal(const QSeries& a, const QSeries& b);

// Sum of weights over every support point of S_n.
TwoVarPoly p_k_n(const LatticeContext& ctx, const AdmissibleFamily& f, std::int64_t n);

// All terms with exponent <= Delta + order.
TwoVarSeries two_var_series(const LatticeContext& ctx, const AdmissibleFamily& f,
                            const Rational& order);

QSeries specialize_t1(const TwoVarSeries& s);

// Zhat_a(q) to the given order from the theta-function description: each
// vertex factor (z - 1/z)^(2 - deg) is expanded in both regimes by truncated
// convolution and the two expansions averaged. Throws NotDeltaParity.
QSeries zhat_oracle(const Plumbing& p, const SpincRepA& a, const Rational& order);

struct StabilizationReport {
  std::int64_t auto_top = 0;
  std::int64_t scanned_to = 0;  // auto_top + margin
  // (q, t) -> last level n at which the coefficient of P_k^n changed.
  std::map<std::pair<Rational, std::int64_t>, std::int64_t> last_change;
  bool ok = true;  // every last change <= auto_top
};

inline constexpr std::int64_t kStabilizationMargin = 3;

StabilizationReport verify_stabilization(const LatticeContext& ctx, const AdmissibleFamily& f,
                                         const Rational& order);

// Series of k against the series of -k with t inverted. Throws A3Violated
// when f fails (A3) on the window below.
inline constexpr int kA3WindowN = 10;
inline constexpr std::int64_t kA3WindowR = 50;

bool conjugation_check(const Plumbing& p, const SpincRepK& k, const AdmissibleFamily& f,
                       const Rational& order);

}  // namespace plumbroot
