#include "plumbroot/spinc.hpp"

#include <algorithm>
#include <cstdlib>

#include "plumbroot/lattice_search.hpp"

namespace plumbroot {

bool is_characteristic(const Plumbing& p, const SpincRepK& k) {
  if (static_cast<int>(k.size()) != p.size()) return false;
  for (int v = 0; v < p.size(); ++v) {
    if ((k[v] - p.weight(v)) % 2 != 0) return false;
  }
  return true;
}

void require_characteristic(const Plumbing& p, const SpincRepK& k) {
  if (static_cast<int>(k.size()) != p.size()) {
    throw Error(ErrorKind::NotCharacteristic,
                "spin^c vector has length " + std::to_string(k.size()) + ", expected " +
                    std::to_string(p.size()));
  }
  if (!is_characteristic(p, k)) {
    throw Error(ErrorKind::NotCharacteristic, "k must be congruent to the weights mod 2");
  }
}

namespace {

struct SpincBasis {
  SmithForm snf;
  IntVec m;
};

SpincBasis spinc_basis(const Plumbing& p) {
  IntersectionMatrix im(p);
  if (im.det() == 0) throw Error(ErrorKind::NotNegativeDefinite, "intersection form is degenerate");
  return {smith_normal_form(im.matrix()), p.weights()};
}

SpincRepK from_smith(const SpincBasis& b, const IntVec& w) {
  IntVec z = b.snf.u_inv * w;
  SpincRepK k(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) k[i] = checked_add(b.m[i], checked_mul(2, z[i]));
  return k;
}

}  // namespace

SpincRepK canonical_spinc(const Plumbing& p, const SpincRepK& k) {
  require_characteristic(p, k);
  SpincBasis b = spinc_basis(p);
  IntVec z(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) z[i] = (k[i] - b.m[i]) / 2;
  IntVec w = b.snf.u * z;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int64_t d = b.snf.diagonal[i];
    w[i] -= d * floor_div(w[i], d);
  }
  return from_smith(b, w);
}

std::vector<SpincRepK> enumerate_spinc(const Plumbing& p) {
  SpincBasis b = spinc_basis(p);
  const IntVec& d = b.snf.diagonal;
  std::vector<SpincRepK> out;
  IntVec w(d.size(), 0);
  while (true) {
    out.push_back(from_smith(b, w));
    std::size_t i = 0;
    while (i < w.size() && w[i] + 1 == d[i]) w[i++] = 0;
    if (i == w.size()) break;
    ++w[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_spinc(const Plumbing& p, const SpincRepK& k1, const SpincRepK& k2) {
  require_characteristic(p, k1);
  require_characteristic(p, k2);
  IntVec half(k1.size());
  for (std::size_t i = 0; i < k1.size(); ++i) half[i] = (k1[i] - k2[i]) / 2;
  return IntersectionMatrix(p).solve_integral(half).has_value();
}

SpincRepK conjugate(const SpincRepK& k) {
  SpincRepK r(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) r[i] = -k[i];
  return r;
}

bool is_self_conjugate(const Plumbing& p, const SpincRepK& k) {
  return same_spinc(p, k, conjugate(k));
}

SpincRepA k_to_a(const Plumbing& p, const SpincRepK& k) {
  IntVec mu = IntersectionMatrix(p).times_ones();
  SpincRepA a(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) a[i] = k[i] - mu[i];
  return a;
}

SpincRepK a_to_k(const Plumbing& p, const SpincRepA& a) {
  IntVec mu = IntersectionMatrix(p).times_ones();
  SpincRepK k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] + mu[i];
  return k;
}

namespace {

void require_length(const Plumbing& p, const IntVec& v) {
  if (static_cast<int>(v.size()) != p.size()) {
    throw Error(ErrorKind::MoveMismatch, "vector length " + std::to_string(v.size()) +
                                             " does not match plumbing size " +
                                             std::to_string(p.size()));
  }
}

IntVec shifted(const IntVec& v) {
  IntVec r{0};
  r.insert(r.end(), v.begin(), v.end());
  return r;
}

}  // namespace

SpincRepK transport_spinc(const Plumbing& p, const NeumannMove& mv, const SpincRepK& k) {
  require_length(p, k);
  MoveResult res = apply_move(p, mv);
  switch (mv.kind) {
    case MoveKind::A_blowup: {
      IntVec r = shifted(k);
      r[0] += 1;
      r[mv.site.first + 1] -= 1;
      r[mv.site.second + 1] -= 1;
      return r;
    }
    case MoveKind::B_blowup: {
      IntVec r = shifted(k);
      r[0] -= 1;
      r[mv.site.first + 1] += 1;
      return r;
    }
    case MoveKind::A_blowdown:
    case MoveKind::B_blowdown: {
      const int v = mv.site.first;
      const bool a = mv.kind == MoveKind::A_blowdown;
      const auto& nb = p.neighbors(v);
      const int i = nb[0];
      // Move along e_i so that k_v becomes +1 (type a) or -1 (type b).
      const std::int64_t target = a ? 1 : -1;
      const std::int64_t c = (target - k[v]) / 2;
      IntersectionMatrix m(p);
      IntVec kk = k;
      for (int w = 0; w < p.size(); ++w) kk[w] = checked_add(kk[w], checked_mul(2 * c, m(w, i)));
      if (a) {
        kk[nb[0]] += 1;
        kk[nb[1]] += 1;
      } else {
        kk[i] -= 1;
      }
      IntVec r(res.plumbing.size());
      for (int w = 0; w < p.size(); ++w) {
        if (res.index_map[w] >= 0) r[res.index_map[w]] = kk[w];
      }
      return r;
    }
  }
  throw Error(ErrorKind::MoveMismatch, "unknown move");
}

SpincRepA transport_a(const Plumbing& p, const NeumannMove& mv, const SpincRepA& a) {
  require_length(p, a);
  apply_move(p, mv);
  IntVec r = shifted(a);
  switch (mv.kind) {
    case MoveKind::A_blowup: return r;
    case MoveKind::B_blowup:
      r[0] -= 1;
      r[mv.site.first + 1] += 1;
      return r;
    default:
      throw Error(ErrorKind::MoveMismatch, "a-vector transport is defined for blow-ups only");
  }
}

std::int64_t chi(const IntersectionMatrix& m, const SpincRepK& k, const IntVec& x) {
  i128 kx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) kx = checked_add128(kx, i128(k[i]) * x[i]);
  i128 twice = -(checked_add128(kx, m.form(x, x)));
  if (twice % 2 != 0) throw Error(ErrorKind::NotCharacteristic, "chi_k is not integral");
  return checked_narrow(twice / 2);
}

std::vector<IntVec> local_min_candidates(const Plumbing& p, const SpincRepK& k) {
  require_characteristic(p, k);
  IntersectionMatrix m(p);
  if (!is_negative_definite(m)) {
    throw Error(ErrorKind::NotNegativeDefinite, "plumbing is not negative definite");
  }
  const int s = p.size();
  // With l = 2Mx + k, 8 chi_k(x) = k^2 - l^T M^{-1} l, and |l_i| <= -m_i
  // bounds -l^T M^{-1} l by sum |m_i m_j adj_ij| / |det|.
  i128 spread = 0;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      spread = checked_add128(spread, checked_mul128(i128(std::llabs(p.weight(i) * p.weight(j))),
                                                     std::llabs(m.adjugate()(i, j))));
    }
  }
  Rational top = m.inverse_form(k) + Rational::from128(spread, std::llabs(m.det()));
  SearchProblem prob;
  prob.a = IntMatrix(s, s);
  prob.b.resize(s);
  for (int i = 0; i < s; ++i) {
    prob.b[i] = -k[i];
    for (int j = 0; j < s; ++j) prob.a(i, j) = -m(i, j);
  }
  prob.bound = (top / Rational(4)).floor();  // bound on 2 chi
  for (int i = 0; i < s; ++i) {
    RowConstraint r;
    for (int j = 0; j < s; ++j) {
      if (m(i, j) != 0) r.terms.emplace_back(j, 2 * m(i, j));
    }
    r.offset = k[i];
    r.kind = RowConstraint::Kind::Interval;
    r.lo = p.weight(i);
    r.hi = -p.weight(i);
    prob.rows.push_back(std::move(r));
  }
  return collect_points(prob);
}

SpincRepK reduce_representative(const Plumbing& p, const SpincRepK& k) {
  IntersectionMatrix m(p);
  require_characteristic(p, k);
  const std::int64_t det = m.det();
  if (det == 0) return k;
  // x0 = round(-M^{-1} k / 2) = round(-adj(M) k / (2 det)).
  const int s = m.size();
  IntVec x0(s);
  const __int128 den = static_cast<__int128>(2) * det;
  for (int i = 0; i < s; ++i) {
    __int128 num = 0;
    for (int j = 0; j < s; ++j) num += static_cast<__int128>(m.adjugate()(i, j)) * k[j];
    num = -num;
    __int128 n = num, d = den;
    if (d < 0) n = -n, d = -d;
    __int128 q = (2 * n + d) / (2 * d);
    if ((2 * n + d) % (2 * d) < 0) --q;  // floor
    x0[i] = checked_narrow(q);
  }
  const IntVec mx = m.matrix() * x0;
  SpincRepK r = k;
  for (int i = 0; i < s; ++i) r[i] = checked_add(r[i], checked_mul(2, mx[i]));
  return r;
}

std::int64_t min_chi(const Plumbing& p, const SpincRepK& k) {
  IntersectionMatrix m(p);
  auto cands = local_min_candidates(p, k);
  std::int64_t best = 0;
  bool first = true;
  for (const auto& x : cands) {
    std::int64_t c = chi(m, k, x);
    if (first || c < best) best = c;
    first = false;
  }
  return best;
}

SpincRepK minimal_representative(const Plumbing& p, const SpincRepK& k_in) {
  IntersectionMatrix m(p);
  const SpincRepK k = reduce_representative(p, k_in);
  auto cands = local_min_candidates(p, k);
  const IntVec* best = nullptr;
  std::int64_t best_chi = 0;
  for (const auto& x : cands) {  // sorted, so the first minimiser is least
    std::int64_t c = chi(m, k, x);
    if (!best || c < best_chi) {
      best = &x;
      best_chi = c;
    }
  }
  IntVec my = m.matrix() * *best;
  SpincRepK r = k;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], checked_mul(2, my[i]));
  return r;
}

Rational d_invariant(const Plumbing& p, const SpincRepK& k_in) {
  IntersectionMatrix m(p);
  const SpincRepK k = reduce_representative(p, k_in);
  Rational k2 = m.inverse_form(k);
  return -(k2 - Rational(8 * min_chi(p, k)) + Rational(p.size())) / Rational(4);
}

}  // namespace plumbroot
