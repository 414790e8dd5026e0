// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "goldens.hpp"
#include "plumbroot/admissible.hpp"
#include "plumbroot/invariance.hpp"
#include "plumbroot/lattice_search.hpp"
#include "plumbroot/root.hpp"
#include "plumbroot/series.hpp"
#include "plumbroot/spinc.hpp"

using namespace plumbroot;
using Clock = std::chrono::steady_clock;

namespace {

// Runtime ceilings in milliseconds.
constexpr long kOneSecond = 1000;
constexpr long kOneMinute = 60 * kOneSecond;
constexpr long kTenMinutes = 10 * kOneMinute;

// Fuzz sizes.
constexpr int kOracleTrees = 50;
constexpr int kOracleMaxVertices = 6;
constexpr std::size_t kAllClassesUpTo = 40;
constexpr std::size_t kSampledClasses = 5;
constexpr int kMoveTrials = 100;
constexpr int kMoveMaxVertices = 6;
constexpr int kMaxMoves = 5;
constexpr int kSeededFamilies = 20;
constexpr int kWindowN = 10;
constexpr std::int64_t kWindowR = 50;
constexpr int kBoxScanMaxVertices = 3;

const Rational kHalf(1, 2);

TwoVarPoly poly(std::initializer_list<std::tuple<Rational, std::int64_t, Rational>> terms) {
  TwoVarPoly p;
  for (const auto& [q, t, c] : terms) p.add(q, t, c);
  return p;
}

// Collects named sub-checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failed_.push_back(what);
  }
  bool ok() const { return failed_.empty(); }
  std::string failures() const {
    std::string out;
    for (const auto& f : failed_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  std::vector<std::string> failed_;
};

int g_failed = 0;

void criterion(const std::string& id, const std::string& title, long limit_ms,
               const std::function<void(Checks&)>& body) {
  Checks c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  c.expect(ms < limit_ms, "runtime " + std::to_string(ms) + " ms over " + std::to_string(limit_ms));
  std::cout << (c.ok() ? "PASS " : "FAIL ") << id << " " << title << " (" << ms << " ms)";
  if (!c.ok()) {
    std::cout << ": " << c.failures();
    ++g_failed;
  }
  std::cout << std::endl;
}

std::vector<const RootVertex*> at_grading(const WeightedGradedRoot& root, const Rational& hf) {
  std::vector<const RootVertex*> out;
  for (const auto& v : root.vertices) {
    if (root.hf_grading(v) == hf) out.push_back(&v);
  }
  return out;
}

// Nonzero weights at an HF grading must be exactly {expected} (or none when
// expected is zero). Reports what was found.
bool weight_at(const WeightedGradedRoot& root, const Rational& hf, const TwoVarPoly& expected,
               std::string& found) {
  auto vs = at_grading(root, hf);
  std::vector<TwoVarPoly> nonzero;
  for (const auto* v : vs) {
    if (!v->weight.is_zero()) nonzero.push_back(v->weight);
  }
  found = std::to_string(vs.size()) + " vertices";
  for (const auto& w : nonzero) found += ", " + w.str();
  if (vs.empty()) return false;
  if (expected.is_zero()) return nonzero.empty();
  return nonzero.size() == 1 && nonzero[0] == expected;
}

std::vector<SpincRepK> sample_classes(const Plumbing& p, std::uint64_t seed) {
  auto classes = enumerate_spinc(p);
  if (classes.size() <= kAllClassesUpTo) return classes;
  std::mt19937_64 rng(seed);
  std::shuffle(classes.begin(), classes.end(), rng);
  classes.resize(kSampledClasses);
  return classes;
}

// Box containing S_j: chi_k(x) <= j iff (x-c)^T(-M)(x-c) <= 2j - k^T M^{-1} k / 4
// with c = -M^{-1}k/2, so |x_i - c_i|^2 <= R (-M^{-1})_ii.
std::pair<IntVec, IntVec> sublevel_box(const LatticeContext& ctx, std::int64_t j) {
  const IntersectionMatrix& m = ctx.matrix();
  const int s = ctx.size();
  const Rational r = Rational(2 * j) - m.inverse_form(ctx.k()) / Rational(4);
  IntVec lo(s), hi(s);
  for (int i = 0; i < s; ++i) {
    Rational c;
    for (int t = 0; t < s; ++t) c -= m.inverse(i, t) * Rational(ctx.k()[t]) / Rational(2);
    const Rational span2 = r.sign() > 0 ? r * -m.inverse(i, i) : Rational(0);
    const std::int64_t span = checked_narrow(isqrt128(span2.ceil())) + 1;
    lo[i] = c.floor() - span;
    hi[i] = c.ceil() + span;
  }
  return {lo, hi};
}

// S_j components by scanning the whole box and joining unit steps.
std::vector<std::vector<IntVec>> box_components(const LatticeContext& ctx, std::int64_t j) {
  auto [lo, hi] = sublevel_box(ctx, j);
  const int s = ctx.size();
  std::vector<IntVec> pts;
  IntVec x = lo;
  while (true) {
    if (chi(ctx.matrix(), ctx.k(), x) <= j) pts.push_back(x);
    int i = 0;
    while (i < s && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == s) break;
    ++x[i];
  }
  std::sort(pts.begin(), pts.end());
  std::map<IntVec, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);
  std::vector<int> parent(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int d = 0; d < s; ++d) {
      IntVec y = pts[i];
      ++y[d];
      auto it = index.find(y);
      if (it != index.end()) parent[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::map<int, std::vector<IntVec>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) groups[find(static_cast<int>(i))].push_back(pts[i]);
  std::vector<std::vector<IntVec>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

bool box_scan_agrees(const LatticeContext& ctx, std::int64_t top, std::string& why) {
  const std::int64_t lo = ctx.birth_levels().front();
  for (std::int64_t j = lo; j <= top; ++j) {
    std::vector<IntVec> fast;
    for_each_sublevel_point(ctx, j, nullptr, [&](const PointInfo& pt) { fast.push_back(pt.x); });
    std::sort(fast.begin(), fast.end());
    auto slow = box_components(ctx, j);
    std::vector<IntVec> flat;
    for (const auto& c : slow) flat.insert(flat.end(), c.begin(), c.end());
    std::sort(flat.begin(), flat.end());
    if (flat != fast) {
      why = "points differ at level " + std::to_string(j);
      return false;
    }
    auto comps = sublevel_components(ctx, j);
    std::sort(comps.begin(), comps.end());
    if (comps != slow) {
      why = "components differ at level " + std::to_string(j);
      return false;
    }
  }
  return true;
}

std::string k_str(const IntVec& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

}  // namespace

int main() {
  const AdmissibleFamily fh = fhat_family();

  criterion("1", "S^3 golden", kOneSecond, [&](Checks& c) {
    const TwoVarPoly expected = poly({{-kHalf, 0, -2}, {kHalf, 1, 1}, {kHalf, -1, 1}});
    int which = 1;
    for (const Plumbing& p : {goldens::gamma1(), goldens::gamma2()}) {
      const std::string g = "Gamma_" + std::to_string(which++);
      LatticeContext ctx = LatticeContext::minimal(p, enumerate_spinc(p).front());
      c.expect(two_var_series(ctx, fh, Rational(10)).poly == expected, g + " series");
    }
    LatticeContext g1 = LatticeContext::minimal(goldens::gamma1(), {-1});
    auto root = build_root(g1, fh, {std::nullopt, Rational(10)});
    auto ids = root.at_level(root.chi_min);
    c.expect(ids.size() == 1 && root.vertices[ids[0]].weight ==
                                    poly({{-kHalf, 0, -2}, {kHalf, 1, 1}}),
             "Gamma_1 level-0 weight");
  });

  criterion("2", "lens golden", kOneSecond, [&](Checks& c) {
    for (std::int64_t p = 2; p <= 5; ++p) {
      LatticeContext ctx(goldens::lens(p), {-p});
      const TwoVarPoly mono = poly({{-Rational(3 - p, 4), 0, -2}});
      c.expect(two_var_series(ctx, fh, Rational(10)).poly == mono,
               "series p=" + std::to_string(p));
      auto root = build_root(ctx, fh, {std::nullopt, Rational(10)});
      bool all = !root.vertices.empty();
      for (const auto& v : root.vertices) all = all && v.weight == mono;
      c.expect(all, "root weights p=" + std::to_string(p));
    }
  });

  criterion("3", "Sigma(2,7,15) golden", kOneMinute, [&](Checks& c) {
    const Plumbing b = goldens::brieskorn_2_7_15();
    const std::int64_t det = IntersectionMatrix(b).det();
    c.expect(det == 1 || det == -1, "|det M| = 1");
    LatticeContext ctx = LatticeContext::minimal(b, enumerate_spinc(b).front());
    // (a)
    c.expect(d_invariant(b, ctx.k()) == Rational(0), "(a) d = 0");
    // (b)
    const Rational order = Rational(311, 2) - ctx.delta();
    std::map<Rational, Rational> expected = {
        {Rational(13, 2), 1},   {Rational(23, 2), -1},  {Rational(39, 2), -1},
        {Rational(57, 2), 1},   {Rational(179, 2), -1}, {Rational(217, 2), 1},
        {Rational(265, 2), 1},  {Rational(311, 2), -1}};
    c.expect(specialize_t1(two_var_series(ctx, fh, order)).terms == expected,
             "(b) Zhat through q^(311/2)");
    // (c)
    auto root = build_root(ctx, fh, {std::nullopt, Rational(30)});
    c.expect(root.d_invariant == Rational(0), "(c) root d = 0");
    const TwoVarPoly a = poly({{Rational(13, 2), 1, kHalf}});
    const TwoVarPoly sym = poly({{Rational(13, 2), 1, kHalf}, {Rational(13, 2), -1, kHalf}});
    TwoVarPoly g12 = sym;
    g12.add(Rational(23, 2), 0, Rational(-1));
    TwoVarPoly g20 = g12;
    g20.add(Rational(39, 2), 0, Rational(-1));
    TwoVarPoly g28 = g20;
    g28.add(Rational(57, 2), 1, kHalf);
    g28.add(Rational(57, 2), -1, kHalf);
    const std::vector<std::pair<std::int64_t, TwoVarPoly>> table = {
        {6, a}, {8, sym}, {10, sym}, {12, g12}, {14, g12}, {20, g20}, {28, g28}};
    for (const auto& [hf, w] : table) {
      std::string found;
      const bool ok = weight_at(root, Rational(hf), w, found);
      c.expect(ok, "(c) HF " + std::to_string(hf) + " expected " + w.str() + ", got " + found);
    }
  });

  criterion("4", "conjugate-distinguishing golden", kOneMinute, [&](Checks& c) {
    const Plumbing gx = goldens::gamma_x();
    const SpincRepK k = {-5, 5, 8, 9, 1};
    const SpincRepK mk = conjugate(k);
    c.expect(enumerate_spinc(gx).size() == 769, "(a) 769 classes");
    c.expect(d_invariant(gx, k) == Rational(-570, 769), "(b) d for k");
    c.expect(d_invariant(gx, mk) == Rational(-570, 769), "(b) d for -k");
    auto rk = build_root(LatticeContext::minimal(gx, k), fh, {std::nullopt, Rational(15)});
    auto rm = build_root(LatticeContext::minimal(gx, mk), fh, {std::nullopt, Rational(15)});
    c.expect(canonical_code(rk, false) != canonical_code(rm, false), "(c) codes differ");
    const Rational hf(5582, 769);
    std::string found;
    bool ok = weight_at(rk, hf, TwoVarPoly(), found);
    c.expect(ok, "(c) k weight 0, got " + found);
    ok = weight_at(rm, hf, poly({{Rational(15009, 1538), 3, kHalf}}), found);
    c.expect(ok, "(c) -k weight 1/2 t^3 q^(15009/1538), got " + found);
    c.expect(conjugation_check(gx, k, fh, Rational(15)), "(d) series conjugation");
  });

  criterion("5", "oracle equivalence", kTenMinutes, [&](Checks& c) {
    int cases = 0;
    for (int i = 0; i < kOracleTrees; ++i) {
      const std::uint64_t seed = 5000 + i;
      Plumbing p = random_plumbing(seed, kOracleMaxVertices);
      for (const auto& k : sample_classes(p, seed)) {
        LatticeContext ctx = LatticeContext::minimal(p, k);
        ++cases;
        c.expect(series_equal(zhat_oracle(p, ctx.a(), Rational(15)),
                              specialize_t1(two_var_series(ctx, fh, Rational(15)))),
                 "seed " + std::to_string(seed) + " k " + k_str(k));
      }
    }
    c.expect(cases >= kOracleTrees, "too few cases");
  });

  criterion("6", "Neumann invariance", kTenMinutes, [&](Checks& c) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < kMoveTrials; ++i) {
      const std::uint64_t seed = 6000 + i;
      Plumbing p = random_plumbing(seed, kMoveMaxVertices);
      MoveTrial trial = random_move_trial(p, rng(), kMaxMoves);
      InvarianceResult r = compare_across_moves(trial, fh, Rational(10));
      c.expect(r.root_equal, "root changed, seed " + std::to_string(seed));
      c.expect(r.series_equal, "series changed, seed " + std::to_string(seed));
    }
  });

  criterion("7", "admissibility suite", kTenMinutes, [&](Checks& c) {
    c.expect(bool(check_admissible(fh, kWindowN, kWindowR)), "f_hat admissible");
    c.expect(bool(check_admissible(fhat_plus_family(), kWindowN, kWindowR)), "f_hat+ admissible");
    c.expect(bool(check_admissible(fhat_minus_family(), kWindowN, kWindowR)), "f_hat- admissible");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 6);
    for (int i = 0; i < kSeededFamilies; ++i) {
      std::vector<std::pair<Rational, Rational>> seeds;
      for (int n = 1; n <= kWindowN; ++n) {
        Rational s0(num(rng), den(rng));
        Rational s1(num(rng), den(rng));
        seeds.emplace_back(s0, s1);
      }
      c.expect(bool(check_admissible(family_from_seeds(seeds), kWindowN, kWindowR)),
               "seeded family " + std::to_string(i));
    }
    c.expect(bool(check_a3(fh, kWindowN, kWindowR)), "f_hat satisfies (A3)");
    for (const auto& f : {fhat_plus_family(), fhat_minus_family()}) {
      auto rep = check_a3(f, kWindowN, kWindowR);
      c.expect(!rep.ok && rep.witness.has_value(), f.name() + " fails (A3) with a witness");
    }
    std::vector<std::pair<Rational, Rational>> seeds;
    for (int n = 1; n <= kWindowN; ++n) seeds.emplace_back(f_hat(n + 2, 0), f_hat(n + 2, 1));
    auto rebuilt = family_from_seeds(seeds);
    bool same = true;
    for (int n = 0; n <= kWindowN; ++n) {
      for (std::int64_t r = -kWindowR; r <= kWindowR; ++r) same = same && rebuilt(n, r) == f_hat(n, r);
    }
    c.expect(same, "seeds of f_hat reproduce f_hat");
  });

  criterion("8", "stabilization certificate", kTenMinutes, [&](Checks& c) {
    struct Case {
      std::string name;
      LatticeContext ctx;
      Rational order;
    };
    std::vector<Case> cases;
    for (const Plumbing& p : {goldens::gamma1(), goldens::gamma2()}) {
      cases.push_back({"S^3", LatticeContext::minimal(p, enumerate_spinc(p).front()), Rational(10)});
    }
    for (std::int64_t p = 2; p <= 5; ++p) {
      cases.push_back({"lens " + std::to_string(p), LatticeContext(goldens::lens(p), {-p}), Rational(10)});
    }
    const Plumbing b = goldens::brieskorn_2_7_15();
    cases.push_back({"Sigma(2,7,15)", LatticeContext::minimal(b, enumerate_spinc(b).front()), Rational(25)});
    cases.push_back({"Gamma_X k", LatticeContext::minimal(goldens::gamma_x(), {-5, 5, 8, 9, 1}), Rational(15)});
    cases.push_back({"Gamma_X -k", LatticeContext::minimal(goldens::gamma_x(), {5, -5, -8, -9, -1}), Rational(15)});
    for (int i = 0; i < kOracleTrees; ++i) {
      const std::uint64_t seed = 5000 + i;
      Plumbing p = random_plumbing(seed, kOracleMaxVertices);
      for (const auto& k : sample_classes(p, seed)) {
        cases.push_back({"oracle seed " + std::to_string(seed) + " k " + k_str(k),
                         LatticeContext::minimal(p, k), Rational(15)});
      }
    }
    std::mt19937_64 rng(6);
    for (int i = 0; i < kMoveTrials; ++i) {
      const std::uint64_t seed = 6000 + i;
      Plumbing p = random_plumbing(seed, kMoveMaxVertices);
      MoveTrial t = random_move_trial(p, rng(), kMaxMoves);
      cases.push_back({"move seed " + std::to_string(seed) + " before",
                       LatticeContext::minimal(t.before, t.k_before), Rational(10)});
      cases.push_back({"move seed " + std::to_string(seed) + " after",
                       LatticeContext::minimal(t.after, t.k_after), Rational(10)});
    }
    int scanned = 0;
    for (const auto& cs : cases) {
      StabilizationReport rep = verify_stabilization(cs.ctx, fh, cs.order);
      c.expect(rep.ok, "unstable after AUTO top: " + cs.name);
      if (cs.ctx.size() <= kBoxScanMaxVertices) {
        std::string why;
        ++scanned;
        const bool ok = box_scan_agrees(cs.ctx, rep.auto_top, why);
        c.expect(ok, "box scan: " + cs.name + ": " + why);
      }
    }
    c.expect(scanned > 0, "no s <= 3 fuzz case");
  });

  std::cout << (g_failed == 0 ? "ALL PASS" : std::to_string(g_failed) + " criteria FAILED")
            << std::endl;
  return g_failed == 0 ? 0 : 1;
}
