#include "plumbroot/series.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "plumbroot/lattice_search.hpp"

namespace plumbroot {

std::string QSeries::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const Rational mag = c.sign() < 0 ? -c : c;
    if (e.is_zero()) {
      os << mag.str();
      continue;
    }
    if (mag != Rational(1)) os << mag.str() << "*";
    os << "q";
    if (e != Rational(1)) os << "^" << (e.is_integer() && e.sign() > 0 ? e.str() : "(" + e.str() + ")");
  }
  return os.str();
}

bool series_equal(const TwoVarSeries& a, const TwoVarSeries& b) {
  const Rational cut = std::min(a.q_limit, b.q_limit);
  return a.poly.truncated(cut) == b.poly.truncated(cut);
}

bool series_equal(const QSeries& a, const QSeries& b) {
  const Rational cut = std::min(a.q_limit, b.q_limit);
  auto head = [&](const QSeries& s) {
    std::map<Rational, Rational> out;
    for (const auto& [e, c] : s.terms) {
      if (e <= cut) out.emplace(e, c);
    }
    return out;
  };
  return head(a) == head(b);
}

TwoVarPoly p_k_n(const LatticeContext& ctx, const AdmissibleFamily& f, std::int64_t n) {
  TwoVarPoly out;
  for_each_sublevel_point(ctx, n, &f, [&](const PointInfo& pt) { add_point_weight(ctx, pt, out); });
  return out;
}

TwoVarSeries two_var_series(const LatticeContext& ctx, const AdmissibleFamily& f,
                            const Rational& order) {
  TwoVarSeries out;
  out.complete_to = order;
  out.q_limit = ctx.delta() + order;
  if (order.sign() < 0) return out;
  for_each_series_point(ctx, order.floor(), f,
                        [&](const PointInfo& pt) { add_point_weight(ctx, pt, out.poly); });
  return out;
}

QSeries specialize_t1(const TwoVarSeries& s) {
  QSeries out;
  out.complete_to = s.complete_to;
  out.q_limit = s.q_limit;
  for (const auto& term : s.poly.terms()) {
    Rational& c = out.terms[term.q];
    c += term.c;
    if (c.is_zero()) out.terms.erase(term.q);
  }
  return out;
}

namespace {

using Laurent = std::map<std::int64_t, Rational>;

// Product of two Laurent polynomials, keeping exponents in [lo, hi].
Laurent convolve(const Laurent& x, const Laurent& y, std::int64_t lo, std::int64_t hi) {
  Laurent out;
  for (const auto& [ex, cx] : x) {
    for (const auto& [ey, cy] : y) {
      const std::int64_t e = ex + ey;
      if (e < lo || e > hi) continue;
      Rational& c = out[e];
      c += cx * cy;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Laurent power(const Laurent& base, int n, std::int64_t lo, std::int64_t hi) {
  Laurent out{{0, Rational(1)}};
  for (int i = 0; i < n; ++i) out = convolve(out, base, lo, hi);
  return out;
}

// Principal-value coefficients of (z - 1/z)^(2 - deg) for exponents in
// [-reach, reach]: the mean of the |z| < 1 and |z| > 1 expansions.
Laurent vertex_factor(int deg, std::int64_t reach) {
  const int n = 2 - deg;
  if (n >= 0) return power({{1, Rational(1)}, {-1, Rational(-1)}}, n, -reach - 2, reach + 2);
  // 1/(z - 1/z) = -z - z^3 - ... inside, 1/z + 1/z^3 + ... outside.
  Laurent inner, outer;
  for (std::int64_t e = 1; e <= reach; e += 2) {
    inner[e] = Rational(-1);
    outer[-e] = Rational(1);
  }
  Laurent lo = power(inner, -n, -reach, reach);
  Laurent hi = power(outer, -n, -reach, reach);
  Laurent out;
  for (const auto& [e, c] : lo) out[e] += c / Rational(2);
  for (const auto& [e, c] : hi) out[e] += c / Rational(2);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace

QSeries zhat_oracle(const Plumbing& p, const SpincRepA& a, const Rational& order) {
  const int s = p.size();
  if (static_cast<int>(a.size()) != s) {
    throw Error(ErrorKind::NotDeltaParity, "a-vector length does not match plumbing size");
  }
  for (int v = 0; v < s; ++v) {
    if ((a[v] - p.degree(v)) % 2 != 0) {
      throw Error(ErrorKind::NotDeltaParity,
                  "a_" + std::to_string(v) + " must have the parity of the vertex degree");
    }
  }
  IntersectionMatrix m(p);
  std::int64_t sum_m = 0;
  for (int v = 0; v < s; ++v) sum_m += p.weight(v);
  const Rational base = -Rational(3 * s + sum_m) / Rational(4);
  const Rational a_sq = m.inverse_form(a);

  QSeries out;
  out.complete_to = order;
  out.q_limit = base - a_sq / Rational(4) + order;
  if (order.sign() < 0) return out;

  // -l^T M^{-1} l <= 4N - a^T M^{-1} a caps |l_v| by sqrt of that times |m_v|.
  const Rational radius = Rational(4) * order - a_sq;
  std::vector<Laurent> factor(s);
  for (int v = 0; v < s; ++v) {
    const Rational cap = radius * Rational(-p.weight(v));
    factor[v] = vertex_factor(p.degree(v), checked_narrow(isqrt128(cap.floor())));
  }

  // l = a + 2Mx; l^T M^{-1} l <= ... is x^T(-M)x - a.x <= N.
  SearchProblem prob;
  prob.a = IntMatrix(s, s);
  prob.b.resize(s);
  for (int i = 0; i < s; ++i) {
    prob.b[i] = -a[i];
    for (int j = 0; j < s; ++j) prob.a(i, j) = -m(i, j);
  }
  prob.bound = order.floor();
  for (int v = 0; v < s; ++v) {
    if (p.degree(v) > 2) continue;
    RowConstraint row;
    for (int j = 0; j < s; ++j) {
      if (m(v, j) != 0) row.terms.emplace_back(j, 2 * m(v, j));
    }
    row.offset = a[v];
    row.kind = RowConstraint::Kind::Finite;
    for (const auto& kv : factor[v]) row.values.push_back(-kv.first);
    std::sort(row.values.begin(), row.values.end());
    prob.rows.push_back(std::move(row));
  }

  enumerate_points(prob, [&](const IntVec& x) {
    IntVec l = m.matrix() * x;
    Rational c(1);
    for (int v = 0; v < s && !c.is_zero(); ++v) {
      l[v] = checked_add(a[v], checked_mul(2, l[v]));
      auto it = factor[v].find(-l[v]);
      c = it == factor[v].end() ? Rational(0) : c * it->second;
    }
    if (c.is_zero()) return;
    const Rational e = base - m.inverse_form(l) / Rational(4);
    Rational& slot = out.terms[e];
    slot += c;
    if (slot.is_zero()) out.terms.erase(e);
  });
  return out;
}

StabilizationReport verify_stabilization(const LatticeContext& ctx, const AdmissibleFamily& f,
                                         const Rational& order) {
  StabilizationReport rep;
  rep.auto_top = auto_top(ctx, f, order);
  rep.scanned_to = rep.auto_top + kStabilizationMargin;
  if (order.sign() < 0) return rep;

  struct Contribution {
    std::int64_t chi;
    Rational q;
    std::int64_t t;
    Rational c;
  };
  const Rational q_max = ctx.delta() + order;
  std::vector<Contribution> contrib;
  for_each_sublevel_point(ctx, rep.scanned_to, &f, [&](const PointInfo& pt) {
    const Rational q = ctx.delta() + Rational(pt.two_chi_a());
    if (q <= q_max) contrib.push_back({pt.chi, q, ctx.theta() + pt.x_dot_mu, pt.weight});
  });
  std::stable_sort(contrib.begin(), contrib.end(),
                   [](const Contribution& x, const Contribution& y) { return x.chi < y.chi; });

  std::map<std::pair<Rational, std::int64_t>, Rational> value;
  for (std::size_t i = 0; i < contrib.size();) {
    const std::int64_t level = contrib[i].chi;
    std::map<std::pair<Rational, std::int64_t>, Rational> before;
    for (; i < contrib.size() && contrib[i].chi == level; ++i) {
      auto key = std::make_pair(contrib[i].q, contrib[i].t);
      before.try_emplace(key, value[key]);
      value[key] += contrib[i].c;
    }
    for (const auto& [key, old] : before) {
      if (value[key] != old) rep.last_change[key] = level;
    }
  }
  for (const auto& [key, n] : rep.last_change) {
    if (n > rep.auto_top) rep.ok = false;
  }
  return rep;
}

bool conjugation_check(const Plumbing& p, const SpincRepK& k, const AdmissibleFamily& f,
                       const Rational& order) {
  WindowReport a3 = check_a3(f, kA3WindowN, kA3WindowR);
  if (!a3) {
    std::string where;
    if (a3.witness) {
      where = " at n = " + std::to_string(a3.witness->first) +
              ", r = " + std::to_string(a3.witness->second);
    }
    throw Error(ErrorKind::A3Violated, "family " + f.name() + " violates (A3)" + where);
  }
  LatticeContext plus(p, k);
  LatticeContext minus(p, conjugate(k));
  TwoVarSeries sp = two_var_series(plus, f, order);
  TwoVarSeries sm = two_var_series(minus, f, order);
  sm.poly = sm.poly.t_inverted();
  return series_equal(sp, sm);
}

}  // namespace plumbroot
