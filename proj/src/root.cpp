#include "plumbroot/root.hpp"

#include <algorithm>
#include <numeric>
#include <array>
#include <limits>
#include <unordered_map>

#include "plumbroot/lattice_search.hpp"

namespace plumbroot {

LatticeContext::LatticeContext(Plumbing p, SpincRepK k)
    : p_(std::move(p)), m_(p_), k_(std::move(k)) {
  require_characteristic(p_, k_);
  if (!is_negative_definite(m_)) {
    throw Error(ErrorKind::NotNegativeDefinite, "plumbing is not negative definite");
  }
  mu_ = m_.times_ones();
  a_.resize(k_.size());
  std::int64_t sum_a = 0, sum_m = 0;
  for (int v = 0; v < p_.size(); ++v) {
    a_[v] = k_[v] - mu_[v];
    sum_a += a_[v];
    sum_m += p_.weight(v);
  }
  delta_ = -(m_.inverse_form(a_) + Rational(3 * p_.size() + sum_m)) / Rational(4);
  theta_ = sum_a / 2;
}

std::int64_t chi(const LatticeContext& ctx, const IntVec& x) {
  return chi(ctx.matrix(), ctx.k(), x);
}

std::pair<Rational, std::int64_t> epsilon_theta(const LatticeContext& ctx, const IntVec& x) {
  std::int64_t xu = 0;
  for (int i = 0; i < ctx.size(); ++i) xu = checked_add(xu, checked_mul(x[i], ctx.mu()[i]));
  return {ctx.delta() + Rational(2 * chi(ctx, x) + xu), ctx.theta() + xu};
}

LatticeContext LatticeContext::minimal(Plumbing p, const SpincRepK& k_in) {
  if (!is_negative_definite(IntersectionMatrix(p))) {
    throw Error(ErrorKind::NotNegativeDefinite, "plumbing is not negative definite");
  }
  const SpincRepK k = reduce_representative(p, k_in);
  LatticeContext base(p, k);
  const auto& cands = base.local_min_candidates();
  const IntVec* best = nullptr;
  std::int64_t best_chi = 0;
  for (const auto& x : cands) {  // sorted, so the first minimiser is least
    const std::int64_t c = chi(base, x);
    if (!best || c < best_chi) {
      best = &x;
      best_chi = c;
    }
  }
  const IntVec y = *best;
  const IntVec my = base.matrix().matrix() * y;
  SpincRepK kk = k;
  for (std::size_t i = 0; i < kk.size(); ++i) kk[i] = checked_add(kk[i], checked_mul(2, my[i]));
  LatticeContext out(std::move(p), std::move(kk));
  // chi_{k+2My}(x) = chi_k(x + y) - chi_k(y): the candidates shift by -y.
  std::call_once(out.cache_->cands_once, [&] {
    out.cache_->cands.reserve(cands.size());
    for (const auto& x : cands) {
      IntVec z = x;
      for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
      out.cache_->cands.push_back(std::move(z));
    }
  });
  return out;
}

const std::vector<IntVec>& LatticeContext::local_min_candidates() const {
  std::call_once(cache_->cands_once,
                 [&] { cache_->cands = plumbroot::local_min_candidates(p_, k_); });
  return cache_->cands;
}

const std::vector<std::int64_t>& LatticeContext::birth_levels() const {
  std::call_once(cache_->births_once, [&] { cache_->births = plumbroot::birth_levels(*this); });
  return cache_->births;
}

std::vector<IntVec> local_min_candidates(const LatticeContext& ctx) {
  return ctx.local_min_candidates();
}

std::vector<std::int64_t> birth_levels(const LatticeContext& ctx) {
  const auto& cands = ctx.local_min_candidates();
  const int s = ctx.size();
  std::vector<std::int64_t> chis(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) chis[i] = chi(ctx, cands[i]);
  auto index_of = [&](const IntVec& x) -> long {
    auto it = std::lower_bound(cands.begin(), cands.end(), x);
    return (it != cands.end() && *it == x) ? it - cands.begin() : -1;
  };
  // Flood each plateau through equal-chi unit steps; it is a birth unless it
  // reaches an equal-chi point outside the candidate set.
  std::vector<char> seen(cands.size(), 0);
  std::vector<std::int64_t> out;
  for (std::size_t start = 0; start < cands.size(); ++start) {
    if (seen[start]) continue;
    seen[start] = 1;
    bool birth = true;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      IntVec y = cands[cur];
      const IntVec my = ctx.matrix().matrix() * y;
      for (int i = 0; i < s; ++i) {
        for (int d : {-1, 1}) {
          y[i] += d;
          // chi(y + d e_i) - chi(y) = -(d k_i + 2 d (My)_i + m_i) / 2
          const std::int64_t step = d * (ctx.k()[i] + 2 * my[i]) + ctx.plumbing().weight(i);
          if (step == 0) {
            long nb = index_of(y);
            if (nb < 0) {
              birth = false;
            } else if (!seen[nb]) {
              seen[nb] = 1;
              stack.push_back(nb);
            }
          }
          y[i] -= d;
        }
      }
    }
    if (birth) out.push_back(chis[start]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SearchProblem base_problem(const LatticeContext& ctx, const IntVec& linear, i128 bound) {
  const int s = ctx.size();
  SearchProblem prob;
  prob.a = IntMatrix(s, s);
  prob.b.resize(s);
  for (int i = 0; i < s; ++i) {
    prob.b[i] = -linear[i];
    for (int j = 0; j < s; ++j) prob.a(i, j) = -ctx.matrix()(i, j);
  }
  prob.bound = bound;
  return prob;
}

// F_0, F_1, F_2 are forced for every admissible family, so vertices of
// degree <= 2 restrict (2Mx + a)_v to a finite set.
void add_support_rows(const LatticeContext& ctx, SearchProblem& prob) {
  const Plumbing& p = ctx.plumbing();
  for (int v = 0; v < p.size(); ++v) {
    const int d = p.degree(v);
    if (d > 2) continue;
    RowConstraint r;
    for (int j = 0; j < p.size(); ++j) {
      if (ctx.matrix()(v, j) != 0) r.terms.emplace_back(j, 2 * ctx.matrix()(v, j));
    }
    r.offset = ctx.a()[v];
    r.kind = RowConstraint::Kind::Finite;
    if (d == 0) r.values = {-2, 0, 2};
    if (d == 1) r.values = {-1, 1};
    if (d == 2) r.values = {0};
    prob.rows.push_back(std::move(r));
  }
}

void run(const LatticeContext& ctx, const SearchProblem& prob, const AdmissibleFamily* family,
         const PointCallback& cb) {
  const Plumbing& p = ctx.plumbing();
  const int s = p.size();
  IntVec mx(s);
  enumerate_points(prob, [&](const IntVec& x) {
    i128 kx = 0, xmx = 0, xu = 0;
    for (int i = 0; i < s; ++i) {
      i128 acc = i128(p.weight(i)) * x[i];
      for (int j : p.neighbors(i)) acc += x[j];
      mx[i] = checked_narrow(acc);
      kx += i128(ctx.k()[i]) * x[i];
      xmx += acc * x[i];
      xu += i128(ctx.mu()[i]) * x[i];
    }
    const std::int64_t c = checked_narrow(-(kx + xmx) / 2);
    Rational w;
    if (family) {
      w = Rational(1);
      for (int v = 0; v < s && !w.is_zero(); ++v) {
        w *= (*family)(p.degree(v), checked_add(checked_mul(2, mx[v]), ctx.a()[v]));
      }
      if (w.is_zero()) return;
    }
    cb(PointInfo{x, c, checked_narrow(xu), w});
  });
}

}  // namespace

void for_each_sublevel_point(const LatticeContext& ctx, std::int64_t j,
                             const AdmissibleFamily* family, const PointCallback& cb) {
  SearchProblem prob = base_problem(ctx, ctx.k(), 2 * i128(j));
  if (family) add_support_rows(ctx, prob);
  run(ctx, prob, family, cb);
}

void for_each_series_point(const LatticeContext& ctx, std::int64_t bound,
                           const AdmissibleFamily& family, const PointCallback& cb) {
  SearchProblem prob = base_problem(ctx, ctx.a(), bound);
  add_support_rows(ctx, prob);
  run(ctx, prob, &family, cb);
}

void add_point_weight(const LatticeContext& ctx, const PointInfo& pt, TwoVarPoly& poly) {
  const Rational& d = ctx.delta();
  const Rational frac = d - Rational(d.floor());
  poly.add_shifted(frac, checked_add(d.floor(), pt.two_chi_a()),
                   checked_add(ctx.theta(), pt.x_dot_mu), pt.weight);
}

namespace {

// Lattice points sorted lexicographically, each encoded as a mixed-radix key
// whose order is that of the points. Unit steps in coordinate i add stride(i).
class PointTable {
 public:
  using Key = unsigned __int128;

  // coords holds the points back to back, s entries each, with chis alongside.
  PointTable(int s, std::vector<std::int32_t> coords, const std::vector<std::int64_t>& chis)
      : s_(s) {
    const std::size_t n = chis.size();
    if (n >= std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorKind::Overflow, "too many lattice points");
    }
    lo_.assign(s, 0);
    IntVec hi(s, 0);
    std::int64_t chi_lo = 0, chi_hi = 0;
    for (std::size_t p = 0; p < n; ++p) {
      for (int i = 0; i < s; ++i) {
        const std::int64_t c = coords[p * s + i];
        if (p == 0 || c < lo_[i]) lo_[i] = c;
        if (p == 0 || c > hi[i]) hi[i] = c;
      }
      if (p == 0 || chis[p] < chi_lo) chi_lo = chis[p];
      if (p == 0 || chis[p] > chi_hi) chi_hi = chis[p];
    }
    // chi rides in the low bits while sorting.
    int chi_bits = 0;
    while ((static_cast<std::uint64_t>(chi_hi - chi_lo) >> chi_bits) != 0) ++chi_bits;
    stride_.assign(s, 0);
    Key stride = 1;
    const Key limit = ~static_cast<Key>(0) >> (2 + chi_bits);
    for (int i = s; i-- > 0;) {
      stride_[i] = stride;
      const auto radix = static_cast<Key>(hi[i] - lo_[i] + 3);
      if (stride > limit / radix) throw Error(ErrorKind::Overflow, "lattice key overflow");
      stride *= radix;
    }
    keys_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      Key k = 0;
      for (int i = 0; i < s; ++i) {
        k += static_cast<Key>(coords[p * s + i] - lo_[i] + 1) * stride_[i];
      }
      keys_[p] = (k << chi_bits) | static_cast<Key>(chis[p] - chi_lo);
    }
    std::vector<std::int32_t>().swap(coords);
    radix_sort(keys_);
    chis_.resize(n);
    const Key mask = (static_cast<Key>(1) << chi_bits) - 1;
    for (std::size_t p = 0; p < n; ++p) {
      chis_[p] = static_cast<std::int64_t>(keys_[p] & mask) + chi_lo;
      keys_[p] >>= chi_bits;
    }
  }

  std::size_t size() const { return keys_.size(); }
  int dim() const { return s_; }
  Key key(std::size_t idx) const { return keys_[idx]; }
  Key stride(int i) const { return stride_[i]; }
  std::int64_t chi(std::size_t idx) const { return chis_[idx]; }
  const std::vector<std::int64_t>& chis() const { return chis_; }

  long find(const IntVec& x) const {
    Key k = 0;
    for (int i = 0; i < s_; ++i) {
      const std::int64_t d = x[i] - lo_[i] + 1;
      if (d < 0) return -1;
      k += static_cast<Key>(d) * stride_[i];
    }
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    return (it != keys_.end() && *it == k) ? it - keys_.begin() : -1;
  }

  IntVec point(std::size_t idx) const {
    IntVec x(s_);
    Key k = keys_[idx];
    for (int i = 0; i < s_; ++i) {
      const Key digit = k / stride_[i];
      k -= digit * stride_[i];
      x[i] = static_cast<std::int64_t>(digit) + lo_[i] - 1;
    }
    return x;
  }

 private:
  // LSD byte radix sort over the bytes actually in use.
  static void radix_sort(std::vector<Key>& v) {
    Key used = 0;
    for (Key k : v) used |= k;
    std::vector<Key> tmp(v.size());
    for (int shift = 0; shift < 128 && (used >> shift) != 0; shift += 8) {
      std::array<std::size_t, 257> count{};
      for (Key k : v) ++count[static_cast<std::size_t>((k >> shift) & 0xff) + 1];
      for (int b = 0; b < 256; ++b) count[b + 1] += count[b];
      for (Key k : v) tmp[count[static_cast<std::size_t>((k >> shift) & 0xff)]++] = k;
      v.swap(tmp);
    }
  }

  int s_;
  IntVec lo_;
  std::vector<Key> stride_;
  std::vector<Key> keys_;
  std::vector<std::int64_t> chis_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns (kept, absorbed) roots, or nullopt if already joined.
  std::optional<std::pair<std::size_t, std::size_t>> unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return std::nullopt;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = static_cast<std::uint32_t>(a);
    size_[a] += size_[b];
    return std::make_pair(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

PointTable collect_sublevel(const LatticeContext& ctx, std::int64_t j) {
  std::vector<std::int32_t> coords;
  std::vector<std::int64_t> chis;
  for_each_sublevel_point(ctx, j, nullptr, [&](const PointInfo& pt) {
    for (std::int64_t c : pt.x) {
      if (c < INT32_MIN || c > INT32_MAX) throw Error(ErrorKind::Overflow, "lattice coordinate");
      coords.push_back(static_cast<std::int32_t>(c));
    }
    chis.push_back(pt.chi);
  });
  return PointTable(ctx.size(), std::move(coords), chis);
}

// Adds points level by level, merging components along unit steps.
class Sweep {
 public:
  explicit Sweep(const PointTable& t) : t_(t), ds_(t.size()) {}

  // Called with (kept, absorbed) on every merge.
  std::function<void(std::size_t, std::size_t)> on_merge;

  // Adds every point with chi <= level; returns the live component count.
  std::size_t advance(std::int64_t level) {
    const std::size_t n = t_.size();
    const auto& chis = t_.chis();
    for (std::size_t p = 0; p < n; ++p) {
      if (chis[p] > done_ && chis[p] <= level) {
        live_.push_back(static_cast<std::uint32_t>(p));
        ++count_;
      }
    }
    // An edge joins once its higher endpoint is in.
    for (int i = 0; i < t_.dim(); ++i) {
      const PointTable::Key step = t_.stride(i);
      std::size_t q = 0;
      for (std::size_t p = 0; p < n; ++p) {
        const std::int64_t cp = chis[p];
        if (cp > level) continue;
        const PointTable::Key want = t_.key(p) + step;
        while (q < n && t_.key(q) < want) ++q;
        if (q == n) break;
        if (t_.key(q) != want) continue;
        const std::int64_t top = std::max(cp, chis[q]);
        if (top <= done_ || top > level) continue;
        if (auto merged = ds_.unite(p, q)) {
          if (on_merge) on_merge(merged->first, merged->second);
          --count_;
        }
      }
    }
    done_ = std::max(done_, level);
    return count_;
  }

  // Current component roots, ascending.
  const std::vector<std::uint32_t>& live() {
    std::erase_if(live_, [&](std::uint32_t r) { return ds_.find(r) != r; });
    std::sort(live_.begin(), live_.end());
    return live_;
  }
  std::size_t find(std::size_t x) { return ds_.find(x); }

 private:
  const PointTable& t_;
  DisjointSets ds_;
  std::int64_t done_ = std::numeric_limits<std::int64_t>::min();
  std::size_t count_ = 0;
  std::vector<std::uint32_t> live_;  // roots, possibly stale until live()
};

std::int64_t first_connected_level(const LatticeContext& ctx, std::int64_t from) {
  for (std::int64_t j = from;; ++j) {
    PointTable sub = collect_sublevel(ctx, j);
    if (sub.size() == 0) continue;
    Sweep sweep(sub);
    if (sweep.advance(j) == 1) return j;
  }
}

// Largest chi over support points with 2 chi_a <= order, at least floor.
std::int64_t order_level(const LatticeContext& ctx, const AdmissibleFamily& family,
                         const Rational& order, std::int64_t floor) {
  std::int64_t n = floor;
  if (order.sign() >= 0) {
    for_each_series_point(ctx, order.floor(), family,
                          [&](const PointInfo& pt) { n = std::max(n, pt.chi); });
  }
  return n;
}

}  // namespace

std::vector<std::vector<IntVec>> sublevel_components(const LatticeContext& ctx, std::int64_t j) {
  PointTable sub = collect_sublevel(ctx, j);
  Sweep sweep(sub);
  sweep.advance(j);
  // Indices are in lexicographic order, so first appearance orders components.
  std::vector<std::vector<IntVec>> out;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t idx = 0; idx < sub.size(); ++idx) {
    auto [it, fresh] = slot.try_emplace(sweep.find(idx), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(sub.point(idx));
  }
  return out;
}

std::int64_t auto_top(const LatticeContext& ctx, const AdmissibleFamily& family,
                      const Rational& order) {
  const auto& births = ctx.birth_levels();
  return first_connected_level(ctx, order_level(ctx, family, order, births.back()));
}

std::vector<int> WeightedGradedRoot::at_level(std::int64_t level) const {
  std::vector<int> out;
  for (const auto& v : vertices) {
    if (v.level == level) out.push_back(v.id);
  }
  return out;
}

Rational WeightedGradedRoot::hf_grading(const RootVertex& v) const {
  return Rational(2 * (v.level - chi_min)) + d_invariant;
}

Rational WeightedGradedRoot::label(const RootVertex& v) const {
  return mode == GradingMode::HfGrading ? hf_grading(v) : Rational(v.level);
}

WeightedGradedRoot build_root(const LatticeContext& ctx, const AdmissibleFamily& family,
                              const RootOptions& options) {
  WeightedGradedRoot root;
  const auto& births = ctx.birth_levels();
  root.chi_min = births.front();
  const std::int64_t births_end = births.back();
  const std::int64_t start = order_level(ctx, family, options.order, births_end);
  root.d_invariant = -(ctx.matrix().inverse_form(ctx.k()) - Rational(8 * root.chi_min) +
                       Rational(ctx.size())) /
                     Rational(4);

  // Levels within the built range at which S_j is a single component.
  std::vector<std::int64_t> connected;
  auto first_connected_from = [&](std::int64_t from) {
    for (std::int64_t j : connected) {
      if (j >= from) return j;
    }
    return first_connected_level(ctx, std::max(from, root.top + 1));
  };

  std::int64_t top = options.top.value_or(start);
  while (true) {
    root.top = top;
    root.vertices.clear();
    connected.clear();
    if (top < root.chi_min) break;

    PointTable sub = collect_sublevel(ctx, top);
    const std::size_t n = sub.size();
    std::vector<TwoVarPoly> pool;
    std::unordered_map<std::size_t, std::size_t> slot;  // point -> pool index
    for_each_sublevel_point(ctx, top, &family, [&](const PointInfo& pt) {
      const long idx = sub.find(pt.x);
      if (idx < 0) return;
      auto [it, fresh] = slot.try_emplace(idx, pool.size());
      if (fresh) pool.emplace_back();
      add_point_weight(ctx, pt, pool[it->second]);
    });
    // least[r]: lexicographically least member of the component rooted at r.
    std::vector<std::uint32_t> least(n);
    std::iota(least.begin(), least.end(), 0);

    Sweep sweep(sub);
    sweep.on_merge = [&](std::size_t kept, std::size_t gone) {
      least[kept] = std::min(least[kept], least[gone]);
      auto g = slot.find(gone);
      if (g == slot.end()) return;
      auto [k, fresh] = slot.try_emplace(kept, g->second);
      if (!fresh) {
        pool[k->second] += pool[g->second];
        pool[g->second] = TwoVarPoly();
      }
      slot.erase(g);
    };

    std::vector<std::pair<int, std::size_t>> prev;  // (vertex id, member index)
    for (std::int64_t j = root.chi_min; j <= top; ++j) {
      if (sweep.advance(j) == 1) connected.push_back(j);
      // Snapshot the components of S_j, ordered by least member.
      const auto& live = sweep.live();
      std::vector<std::size_t> roots(live.begin(), live.end());
      std::sort(roots.begin(), roots.end(),
                [&](std::size_t a, std::size_t b) { return least[a] < least[b]; });
      std::unordered_map<std::size_t, int> id_of;
      std::vector<std::pair<int, std::size_t>> cur;
      for (std::size_t r : roots) {
        RootVertex v;
        v.id = static_cast<int>(root.vertices.size());
        v.level = j;
        if (auto it = slot.find(r); it != slot.end()) v.weight = pool[it->second];
        v.representative = sub.point(least[r]);
        id_of[r] = v.id;
        cur.emplace_back(v.id, least[r]);
        root.vertices.push_back(std::move(v));
      }
      for (auto [vid, member] : prev) {
        const int parent = id_of.at(sweep.find(member));
        root.vertices[vid].parent = parent;
        root.vertices[parent].children.push_back(vid);
      }
      prev = std::move(cur);
    }
    // An automatic top must be connected; otherwise move up a level.
    if (options.top || (!connected.empty() && connected.back() == top)) break;
    ++top;
  }

  root.auto_top = options.top ? first_connected_from(start) : root.top;
  root.stabilization_level = first_connected_from(births_end);
  root.truncated_below_stabilization = root.top < root.auto_top;
  return root;
}

WeightedGradedRoot normalize_root(WeightedGradedRoot root, GradingMode mode) {
  if (mode == GradingMode::ChiMinZero) {
    const std::int64_t shift = root.chi_min;
    for (auto& v : root.vertices) v.level -= shift;
    root.chi_min -= shift;
    root.top -= shift;
    root.auto_top -= shift;
    root.stabilization_level -= shift;
    root.level_shift += shift;
  }
  root.mode = mode;
  return root;
}

namespace {

std::string vertex_code(const WeightedGradedRoot& root, int id, std::int64_t top, bool relative) {
  const RootVertex& v = root.vertices[id];
  std::vector<std::string> kids;
  for (int c : v.children) kids.push_back(vertex_code(root, c, top, relative));
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + std::to_string(relative ? top - v.level : v.level) + ":" + v.weight.key();
  for (const auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

std::string canonical_code(const WeightedGradedRoot& root, bool relative) {
  if (root.vertices.empty()) throw Error(ErrorKind::NotStabilized, "root is empty");
  const std::int64_t top = root.vertices.back().level;
  auto tops = root.at_level(top);
  if (tops.size() != 1) {
    throw Error(ErrorKind::NotStabilized,
                "top level " + std::to_string(top) + " has " + std::to_string(tops.size()) +
                    " vertices");
  }
  return vertex_code(root, tops[0], top, relative);
}

ModuleRanks module_ranks(const WeightedGradedRoot& root) {
  ModuleRanks out;
  for (const auto& v : root.vertices) {
    if (out.rank_per_level.empty() || out.rank_per_level.back().first != v.level) {
      out.rank_per_level.emplace_back(v.level, 0);
    }
    ++out.rank_per_level.back().second;
    out.u_action.push_back(v.children);
  }
  return out;
}

}  // namespace plumbroot
