#include "plumbroot/lattice_search.hpp"

#include <algorithm>

namespace plumbroot {

namespace {

using Kind = RowConstraint::Kind;

i128 quad_value(const IntMatrix& a, const IntVec& b, const IntVec& x) {
  i128 acc = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    i128 row = b[i];
    for (std::size_t j = 0; j < n; ++j) row = checked_add128(row, i128(a(i, j)) * x[j]);
    acc = checked_add128(acc, checked_mul128(row, x[i]));
  }
  return acc;
}

i128 row_value(const RowConstraint& r, const IntVec& x) {
  i128 acc = r.offset;
  for (auto [v, c] : r.terms) acc = checked_add128(acc, i128(c) * x[v]);
  return acc;
}

bool row_accepts(const RowConstraint& r, i128 value) {
  switch (r.kind) {
    case Kind::Any: return true;
    case Kind::Interval: return value >= r.lo && value <= r.hi;
    case Kind::Finite: return std::binary_search(r.values.begin(), r.values.end(), value);
  }
  return false;
}

// Small dense i128 helpers for the Schur-complement setup.
using Mat128 = std::vector<std::vector<i128>>;

struct Level {
  // Bound polynomial in the first depth+1 ordered variables, scaled so that
  // y^T P y + p.y + c <= 0 is the exact feasibility test.
  Mat128 p_mat;
  std::vector<i128> p_lin;
  i128 c = 0;
  std::int64_t box_lo = 0, box_hi = 0;
  bool boxed = false;
  struct Row {
    std::vector<std::pair<int, std::int64_t>> prior;  // (ordered position, coef)
    std::int64_t coef = 0;                             // of the current variable
    const RowConstraint* src = nullptr;
    std::int64_t offset = 0;
  };
  std::vector<Row> rows;
};

std::vector<int> choose_order(int n, const std::vector<RowConstraint>& rows) {
  std::vector<std::vector<int>> vars;
  for (const auto& r : rows) {
    if (r.kind == Kind::Any) continue;
    std::vector<int> vs;
    for (auto [v, c] : r.terms) {
      if (c != 0) vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (!vs.empty()) vars.push_back(std::move(vs));
  }
  std::vector<char> fixed(n, 0);
  // Variable i is determined once some row has every other variable fixed.
  auto determined = [&](const std::vector<char>& fx, int i) {
    for (const auto& vs : vars) {
      if (!std::binary_search(vs.begin(), vs.end(), i)) continue;
      bool ok = true;
      for (int v : vs) {
        if (v != i && !fx[v]) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  auto closure = [&](int start) {
    std::vector<char> fx = fixed;
    fx[start] = 1;
    int count = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < n; ++i) {
        if (!fx[i] && determined(fx, i)) {
          fx[i] = 1;
          ++count;
          grew = true;
        }
      }
    }
    return count;
  };
  std::vector<int> order;
  while (static_cast<int>(order.size()) < n) {
    int pick = -1;
    for (int i = 0; i < n && pick < 0; ++i) {
      if (!fixed[i] && determined(fixed, i)) pick = i;
    }
    if (pick < 0) {
      int best = -1;
      for (int i = 0; i < n; ++i) {
        if (fixed[i]) continue;
        int c = closure(i);
        if (c > best) {
          best = c;
          pick = i;
        }
      }
    }
    fixed[pick] = 1;
    order.push_back(pick);
  }
  return order;
}

class Searcher {
 public:
  Searcher(const SearchProblem& prob, const PointVisitor& visit) : visit_(visit) {
    n_ = static_cast<int>(prob.a.rows());
    setup(prob);
  }

  void run() {
    if (n_ == 0) return;
    y_.assign(n_, 0);
    x_.assign(n_, 0);
    g_.assign((n_ + 1) * n_, 0);
    h_.assign((n_ + 1) * n_ * n_, 0);
    for (int u = 0; u < n_; ++u) g_at(0, u) = levels_[u].c;
    descend(0);
  }

 private:
  void setup(const SearchProblem& prob) {
    const int n = n_;
    const IntMatrix& a = prob.a;
    // Recentre at the nearest lattice point to the real minimiser.
    const std::int64_t det = determinant(a);
    const IntMatrix adj = adjugate(a);
    center_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      i128 num = 0;
      for (int j = 0; j < n; ++j) num = checked_add128(num, -i128(adj(i, j)) * prob.b[j]);
      // round(num / (2 det))
      center_[i] = checked_narrow(floor_div128(checked_add128(num, det), 2 * i128(det)));
    }
    IntVec b2 = prob.b;
    for (int i = 0; i < n; ++i) {
      i128 acc = prob.b[i];
      for (int j = 0; j < n; ++j) acc = checked_add128(acc, 2 * i128(a(i, j)) * center_[j]);
      b2[i] = checked_narrow(acc);
    }
    const i128 bound = checked_add128(prob.bound, -quad_value(a, prob.b, center_));

    order_ = choose_order(n, prob.rows);
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[order_[t]] = t;

    levels_.assign(n, {});
    for (int t = 0; t < n; ++t) {
      Level& lv = levels_[t];
      std::vector<std::size_t> head(order_.begin(), order_.begin() + t + 1);
      std::vector<std::size_t> tail(order_.begin() + t + 1, order_.end());
      const IntMatrix att = a.principal(tail);
      const i128 d = determinant(att);
      const IntMatrix adj_t = adjugate(att);
      const std::size_t h = head.size(), f = tail.size();
      // w = adj(A_FF) * A_FS (f x h) and wb = adj(A_FF) * b_F.
      Mat128 w(f, std::vector<i128>(h, 0));
      std::vector<i128> wb(f, 0);
      for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t k = 0; k < f; ++k) {
          const i128 aik = adj_t(i, k);
          if (aik == 0) continue;
          for (std::size_t j = 0; j < h; ++j) {
            w[i][j] = checked_add128(w[i][j], checked_mul128(aik, a(tail[k], head[j])));
          }
          wb[i] = checked_add128(wb[i], checked_mul128(aik, b2[tail[k]]));
        }
      }
      lv.p_mat.assign(h, std::vector<i128>(h, 0));
      lv.p_lin.assign(h, 0);
      for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
          i128 acc = checked_mul128(d, a(head[i], head[j]));
          for (std::size_t k = 0; k < f; ++k) {
            acc = checked_add128(acc, -checked_mul128(a(head[i], tail[k]), w[k][j]));
          }
          lv.p_mat[i][j] = checked_mul128(4, acc);
        }
        i128 acc = checked_mul128(d, b2[head[i]]);
        for (std::size_t k = 0; k < f; ++k) {
          acc = checked_add128(acc, -checked_mul128(a(head[i], tail[k]), wb[k]));
        }
        lv.p_lin[i] = checked_mul128(4, acc);
      }
      i128 cc = 0;
      for (std::size_t k = 0; k < f; ++k) cc = checked_add128(cc, checked_mul128(b2[tail[k]], wb[k]));
      lv.c = checked_add128(-cc, -checked_mul128(checked_mul128(4, d), bound));
      if (prob.box) {
        lv.boxed = true;
        const int v = order_[t];
        lv.box_lo = checked_add(prob.box->first[v], -center_[v]);
        lv.box_hi = checked_add(prob.box->second[v], -center_[v]);
      }
    }
    for (const auto& r : prob.rows) {
      if (r.kind == Kind::Any) continue;
      int last = -1;
      for (auto [v, c] : r.terms) {
        if (c != 0) last = std::max(last, pos[v]);
      }
      Level::Row row;
      row.src = &r;
      i128 off = r.offset;
      for (auto [v, c] : r.terms) off = checked_add128(off, i128(c) * center_[v]);
      row.offset = checked_narrow(off);
      if (last < 0) {
        // Constant row: either always or never satisfied.
        if (!row_accepts(r, off)) infeasible_ = true;
        continue;
      }
      for (auto [v, c] : r.terms) {
        if (c == 0) continue;
        if (pos[v] == last) {
          row.coef = checked_add(row.coef, c);
        } else {
          row.prior.emplace_back(pos[v], c);
        }
      }
      levels_[last].rows.push_back(std::move(row));
    }
  }

  void descend(int t) {
    if (infeasible_) return;
    const Level& lv = levels_[t];
    // alpha y^2 + beta y + gamma <= 0 in the current variable.
    const i128 alpha = lv.p_mat[t][t];
    const i128 beta = checked_add128(lv.p_lin[t], checked_mul128(2, h_at(t, t, t)));
    const i128 gamma = g_at(t, t);
    auto f = [&](i128 y) {
      return checked_add128(checked_add128(checked_mul128(checked_mul128(alpha, y), y),
                                           checked_mul128(beta, y)),
                            gamma);
    };
    const i128 disc = checked_add128(checked_mul128(beta, beta),
                                     -checked_mul128(checked_mul128(4, alpha), gamma));
    if (disc < 0) return;
    const i128 sq = isqrt128(disc);
    i128 lo = ceil_div128(-beta - sq - 1, 2 * alpha);
    i128 hi = floor_div128(-beta + sq + 1, 2 * alpha);
    while (lo <= hi && f(lo) > 0) ++lo;
    while (hi >= lo && f(hi) > 0) --hi;
    if (lv.boxed) {
      lo = std::max<i128>(lo, lv.box_lo);
      hi = std::min<i128>(hi, lv.box_hi);
    }
    if (lo > hi) return;

    // Row constraints completed by this variable.
    const Level::Row* finite = nullptr;
    i128 finite_rest = 0;
    for (const auto& r : lv.rows) {
      i128 rest = r.offset;
      for (auto [p, c] : r.prior) rest = checked_add128(rest, i128(c) * y_[p]);
      if (r.coef == 0) {
        if (!row_accepts(*r.src, rest)) return;
        continue;
      }
      if (r.src->kind == Kind::Interval) {
        i128 a = r.src->lo - rest, b = r.src->hi - rest;
        i128 l2, h2;
        if (r.coef > 0) {
          l2 = ceil_div128(a, r.coef);
          h2 = floor_div128(b, r.coef);
        } else {
          l2 = ceil_div128(b, r.coef);
          h2 = floor_div128(a, r.coef);
        }
        lo = std::max(lo, l2);
        hi = std::min(hi, h2);
        if (lo > hi) return;
      } else if (!finite) {
        finite = &r;
        finite_rest = rest;
      }
    }

    auto accept = [&](i128 y) {
      for (const auto& r : lv.rows) {
        if (r.coef == 0 || r.src->kind != Kind::Finite || &r == finite) continue;
        i128 v = r.offset + i128(r.coef) * y;
        for (auto [p, c] : r.prior) v += i128(c) * y_[p];
        if (!row_accepts(*r.src, v)) return false;
      }
      return true;
    };
    auto step = [&](i128 y) {
      y_[t] = checked_narrow(y);
      if (t + 1 < n_) fix(t, y);
      if (t + 1 == n_) {
        for (int i = 0; i < n_; ++i) x_[order_[i]] = y_[i] + center_[order_[i]];
        visit_(x_);
      } else {
        descend(t + 1);
      }
    };
    if (finite) {
      for (std::int64_t val : finite->src->values) {
        i128 num = i128(val) - finite_rest;
        if (num % finite->coef != 0) continue;
        i128 y = num / finite->coef;
        if (y < lo || y > hi || !accept(y)) continue;
        step(y);
      }
    } else {
      for (i128 y = lo; y <= hi; ++y) {
        if (accept(y)) step(y);
      }
    }
  }

  // With y_0..y_{t-1} fixed: g_at(t, u) is the constant term of level u's
  // bound and h_at(t, u, i) = sum_{j<t} P_u[i][j] y_j.
  i128& g_at(int t, int u) { return g_[t * n_ + u]; }
  i128& h_at(int t, int u, int i) { return h_[(t * n_ + u) * n_ + i]; }

  // Propagates y_t = v into the accumulators of every deeper level.
  void fix(int t, i128 v) {
    for (int u = t + 1; u < n_; ++u) {
      const Level& lu = levels_[u];
      const i128 lin = checked_add128(lu.p_lin[t], checked_mul128(2, h_at(t, u, t)));
      i128 g = checked_add128(g_at(t, u), checked_mul128(lin, v));
      g_at(t + 1, u) = checked_add128(g, checked_mul128(checked_mul128(lu.p_mat[t][t], v), v));
      for (int i = t + 1; i <= u; ++i) {
        h_at(t + 1, u, i) = checked_add128(h_at(t, u, i), checked_mul128(lu.p_mat[i][t], v));
      }
    }
  }

  std::vector<i128> g_, h_;
  const PointVisitor& visit_;
  int n_ = 0;
  bool infeasible_ = false;
  IntVec center_;
  std::vector<int> order_;
  std::vector<Level> levels_;
  IntVec y_, x_;
};

}  // namespace

bool rows_hold(const std::vector<RowConstraint>& rows, const IntVec& x) {
  for (const auto& r : rows) {
    if (!row_accepts(r, row_value(r, x))) return false;
  }
  return true;
}

void enumerate_points(const SearchProblem& problem, const PointVisitor& visit) {
  Searcher(problem, visit).run();
}

std::vector<IntVec> collect_points(const SearchProblem& problem) {
  std::vector<IntVec> out;
  enumerate_points(problem, [&](const IntVec& x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> scan_box(const SearchProblem& problem, const IntVec& lo, const IntVec& hi) {
  std::vector<IntVec> out;
  const std::size_t n = lo.size();
  if (n == 0) return out;
  IntVec x = lo;
  while (true) {
    bool in_box = true;
    if (problem.box) {
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < problem.box->first[i] || x[i] > problem.box->second[i]) in_box = false;
      }
    }
    if (in_box && quad_value(problem.a, problem.b, x) <= problem.bound &&
        rows_hold(problem.rows, x)) {
      out.push_back(x);
    }
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plumbroot
