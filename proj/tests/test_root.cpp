#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "goldens.hpp"
#include "plumbroot/root.hpp"

using namespace plumbroot;

namespace {

TwoVarPoly poly(std::initializer_list<std::tuple<Rational, std::int64_t, Rational>> terms) {
  TwoVarPoly p;
  for (const auto& [q, t, c] : terms) p.add(q, t, c);
  return p;
}

const Rational kHalf(1, 2);

// Cube-complex components by brute force: cells of every dimension in a box,
// a cell is in S_j when all its corners are, and two points are joined when
// they share a cell. Independent of the unit-step shortcut.
std::vector<std::vector<IntVec>> cube_components_oracle(const LatticeContext& ctx,
                                                        std::int64_t j, std::int64_t r) {
  const int s = ctx.size();
  std::vector<IntVec> pts;
  IntVec x(s, -r);
  auto advance = [&](IntVec& v, std::int64_t lo, std::int64_t hi) {
    int i = 0;
    while (i < s && v[i] == hi) v[i++] = lo;
    if (i == s) return false;
    ++v[i];
    return true;
  };
  do {
    if (chi(ctx, x) <= j) pts.push_back(x);
  } while (advance(x, -r, r));
  std::sort(pts.begin(), pts.end());
  std::map<IntVec, int> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = static_cast<int>(i);
  std::vector<int> comp(pts.size());
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
  // Every cell: base corner plus a nonempty direction subset.
  for (const auto& base : pts) {
    for (int mask = 1; mask < (1 << s); ++mask) {
      std::vector<int> corners;
      bool inside = true;
      for (int sub = mask;; sub = (sub - 1) & mask) {
        IntVec c = base;
        for (int i = 0; i < s; ++i) {
          if (sub >> i & 1) ++c[i];
        }
        auto it = idx.find(c);
        if (it == idx.end()) {
          inside = false;
          break;
        }
        corners.push_back(it->second);
        if (sub == 0) break;
      }
      if (!inside) continue;
      for (int c : corners) comp[find(c)] = find(corners[0]);
    }
  }
  std::map<int, std::vector<IntVec>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) groups[find(static_cast<int>(i))].push_back(pts[i]);
  std::vector<std::vector<IntVec>> out;
  for (auto& [k, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

IntVec random_char(const Plumbing& p, std::mt19937_64& rng, std::int64_t r) {
  IntVec k(p.size());
  for (int i = 0; i < p.size(); ++i) {
    k[i] = p.weight(i) + 2 * std::uniform_int_distribution<std::int64_t>(-r, r)(rng);
  }
  return k;
}

}  // namespace

TEST_CASE("chi, epsilon and theta") {
  LatticeContext g2(goldens::gamma2(), {-1, 0});
  for (std::int64_t x = -4; x <= 4; ++x) {
    for (std::int64_t y = -4; y <= 4; ++y) {
      std::int64_t twice = x * x + 2 * y * y - 2 * x * y + x;
      CHECK(2 * chi(g2, {x, y}) == twice);
    }
  }
  CHECK(chi(g2, {1, 1}) == 1);
  CHECK(chi(g2, {0, 0}) == 0);
  CHECK(chi(g2, {-2, -1}) == 0);
  CHECK(g2.delta() == Rational(-1, 2));
  CHECK(g2.theta() == 0);

  for (std::int64_t p = 2; p <= 5; ++p) {
    LatticeContext lp(goldens::lens(p), {-p});
    for (std::int64_t x = -3; x <= 3; ++x) {
      auto [eps, th] = epsilon_theta(lp, {x});
      CHECK(eps == -Rational(3 - p, 4) + Rational(p * x * x));
      CHECK(th == -p * x);
    }
  }

  // Translation: k' = k + 2My gives chi_{k'}(x) = chi_k(x + y) - chi_k(y)
  // and eps_{k'}(x) = eps_k(x + y).
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Plumbing p = random_plumbing(seed, 4);
    std::mt19937_64 rng(seed);
    IntVec k = random_char(p, rng, 3);
    IntVec y(p.size());
    for (auto& v : y) v = std::uniform_int_distribution<std::int64_t>(-2, 2)(rng);
    IntVec my = IntersectionMatrix(p).matrix() * y;
    IntVec k2 = k;
    for (int i = 0; i < p.size(); ++i) k2[i] += 2 * my[i];
    LatticeContext c1(p, k), c2(p, k2);
    for (int t = 0; t < 5; ++t) {
      IntVec x(p.size());
      for (auto& v : x) v = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
      IntVec xy = x;
      for (int i = 0; i < p.size(); ++i) xy[i] += y[i];
      CHECK(chi(c2, x) == chi(c1, xy) - chi(c1, y));
      CHECK(epsilon_theta(c2, x) == epsilon_theta(c1, xy));
    }
    CHECK(chi(c1, IntVec(p.size(), 0)) == 0);
  }
}

TEST_CASE("local minimum candidates") {
  LatticeContext g1(goldens::gamma1(), {-1});
  CHECK(local_min_candidates(g1) == std::vector<IntVec>{{-1}, {0}});
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Plumbing p = random_plumbing(seed, 3);
    std::mt19937_64 rng(seed);
    LatticeContext ctx(p, random_char(p, rng, 3));
    auto cands = local_min_candidates(ctx);
    REQUIRE(!cands.empty());
    // Every weak local minimum in a box is a candidate.
    const int s = p.size();
    const std::int64_t r = 8;
    IntVec x(s, -r);
    while (true) {
      bool local = true;
      for (int i = 0; i < s && local; ++i) {
        for (int d : {-1, 1}) {
          IntVec y = x;
          y[i] += d;
          if (chi(ctx, y) < chi(ctx, x)) local = false;
        }
      }
      if (local) CHECK(std::binary_search(cands.begin(), cands.end(), x));
      int i = 0;
      while (i < s && x[i] == r) x[i++] = -r;
      if (i == s) break;
      ++x[i];
    }
  }
}

TEST_CASE("sublevel components") {
  LatticeContext g2(goldens::gamma2(), {-1, 0});
  auto s0 = sublevel_components(g2, 0);
  REQUIRE(s0.size() == 1);
  auto has = [](const std::vector<IntVec>& c, IntVec x) {
    return std::find(c.begin(), c.end(), x) != c.end();
  };
  CHECK(has(s0[0], {-2, -1}));
  CHECK(has(s0[0], {-1, 0}));
  CHECK(has(s0[0], {0, 0}));
  CHECK_FALSE(has(s0[0], {1, 1}));
  auto s1 = sublevel_components(g2, 1);
  REQUIRE(s1.size() == 1);
  CHECK(has(s1[0], {1, 1}));
  CHECK(sublevel_components(g2, -1).empty());

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Plumbing p = random_plumbing(seed, 3);
    std::mt19937_64 rng(seed);
    LatticeContext ctx(p, random_char(p, rng, 2));
    std::int64_t lo = min_chi(p, ctx.k());
    for (std::int64_t j = lo; j <= lo + 3; ++j) {
      auto fast = sublevel_components(ctx, j);
      auto slow = cube_components_oracle(ctx, j, 12);
      for (const auto& c : slow) {
        for (const auto& x : c) {
          for (auto v : x) REQUIRE(std::llabs(v) < 12);
        }
      }
      auto sorted = fast;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == slow);
    }
  }
}

TEST_CASE("S3 and lens roots") {
  auto fh = fhat_family();
  LatticeContext g1(goldens::gamma1(), {-1});
  auto root = build_root(g1, fh);
  CHECK(root.chi_min == 0);
  CHECK(root.d_invariant == Rational(0));
  auto level0 = root.at_level(0);
  REQUIRE(level0.size() == 1);
  CHECK(root.vertices[level0[0]].weight ==
        poly({{Rational(-1, 2), 0, Rational(-2)}, {kHalf, 1, Rational(1)}}));
  TwoVarPoly stem = poly({{Rational(-1, 2), 0, Rational(-2)}, {kHalf, 1, Rational(1)},
                          {kHalf, -1, Rational(1)}});
  for (std::int64_t j = 1; j <= root.top; ++j) {
    auto ids = root.at_level(j);
    REQUIRE(ids.size() == 1);
    CHECK(root.vertices[ids[0]].weight == stem);
  }
  CHECK(root.top >= 1);

  for (std::int64_t p = 2; p <= 5; ++p) {
    LatticeContext lp(goldens::lens(p), {-p});
    auto r = build_root(lp, fh, {std::optional<std::int64_t>(4), Rational(10)});
    TwoVarPoly mono = poly({{-Rational(3 - p, 4), 0, Rational(-2)}});
    for (const auto& v : r.vertices) CHECK(v.weight == mono);
    auto ranks = module_ranks(r);
    for (auto [lvl, count] : ranks.rank_per_level) CHECK(count == 1);
  }
}

TEST_CASE("Gamma_2 weights at q = t = 1") {
  LatticeContext g2(goldens::gamma2(), {-1, 0});
  auto root = build_root(g2, fhat_family());
  auto ids = root.at_level(0);
  REQUIRE(ids.size() == 1);
  CHECK(root.vertices[ids[0]].weight.at_one() == Rational(-1));
}

TEST_CASE("normalization and codes") {
  auto fh = fhat_family();
  LatticeContext g1(goldens::gamma1(), {-1});
  LatticeContext g2(goldens::gamma2(), {-1, 0});
  RootOptions opt{std::optional<std::int64_t>(3), Rational(10)};
  auto r1 = build_root(g1, fh, opt);
  auto r2 = build_root(g2, fh, opt);
  CHECK(canonical_code(r1, false) == canonical_code(r2, false));

  auto z = normalize_root(r1, GradingMode::ChiMinZero);
  auto zz = normalize_root(z, GradingMode::ChiMinZero);
  CHECK(canonical_code(z, false) == canonical_code(zz, false));
  CHECK(z.chi_min == 0);

  // Translation equivariance on random plumbings.
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Plumbing p = random_plumbing(seed, 3);
    std::mt19937_64 rng(seed);
    IntVec k = random_char(p, rng, 2);
    IntVec y(p.size());
    for (auto& v : y) v = std::uniform_int_distribution<std::int64_t>(-2, 2)(rng);
    IntVec my = IntersectionMatrix(p).matrix() * y;
    IntVec k2 = k;
    for (int i = 0; i < p.size(); ++i) k2[i] += 2 * my[i];
    LatticeContext c1(p, k), c2(p, k2);
    std::int64_t shift = chi(c1, y);
    std::int64_t top1 = std::max(auto_top(c1, fh, Rational(6)), auto_top(c2, fh, Rational(6)) + shift);
    auto a = build_root(c1, fh, {top1, Rational(6)});
    auto b = build_root(c2, fh, {top1 - shift, Rational(6)});
    CHECK(a.chi_min == b.chi_min + shift);
    CHECK(canonical_code(a, true) == canonical_code(b, true));
    CHECK(a.d_invariant == b.d_invariant);
  }

  // Reordering the plumbing's vertices does not change the code.
  Plumbing gx = goldens::gamma_x();
  std::vector<int> perm{3, 0, 4, 1, 2};
  Plumbing gp = permute(gx, perm);
  IntVec k{-5, 5, 8, 9, 1}, kp(5);
  for (int v = 0; v < 5; ++v) kp[perm[v]] = k[v];
  RootOptions o{std::optional<std::int64_t>(), Rational(2)};
  auto ra = build_root(LatticeContext(gx, k), fh, o);
  auto rb = build_root(LatticeContext(gp, kp), fh, o);
  CHECK(canonical_code(ra, false) == canonical_code(rb, false));
}

TEST_CASE("root structure invariants") {
  auto fh = fhat_family();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Plumbing p = random_plumbing(seed, 4);
    std::mt19937_64 rng(seed);
    LatticeContext ctx(p, random_char(p, rng, 2));
    auto root = build_root(ctx, fh, {std::nullopt, Rational(4)});
    for (const auto& v : root.vertices) {
      if (v.level < root.top) {
        REQUIRE(v.parent >= 0);
        CHECK(root.vertices[v.parent].level == v.level + 1);
      } else {
        CHECK(v.parent == -1);
      }
      for (int c : v.children) CHECK(root.vertices[c].parent == v.id);
    }
    for (std::int64_t j = root.stabilization_level; j <= root.top; ++j) {
      CHECK(root.at_level(j).size() == 1);
    }
    // Top weight equals the sum of F q^eps t^theta over all of S_top.
    TwoVarPoly direct;
    for_each_sublevel_point(ctx, root.top, &fh,
                            [&](const PointInfo& pt) { add_point_weight(ctx, pt, direct); });
    CHECK(root.vertices.back().weight == direct);
  }
}

TEST_CASE("minimal contexts") {
  auto fh = fhat_family();
  Plumbing p({-9, -9, -11, -10, -3}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  IntVec huge{-9, -9, -50264211, -10, 150776497};
  LatticeContext a = LatticeContext::minimal(p, huge);
  LatticeContext b = LatticeContext::minimal(p, reduce_representative(p, huge));
  CHECK(a.k() == b.k());
  CHECK(a.birth_levels().front() == 0);
  CHECK(chi(a, IntVec(p.size(), 0)) == 0);
  // Cached candidates of a minimal context match a fresh search.
  LatticeContext fresh(p, a.k());
  CHECK(a.local_min_candidates() == fresh.local_min_candidates());
  CHECK(a.birth_levels() == fresh.birth_levels());
  RootOptions o{std::nullopt, Rational(4)};
  CHECK(canonical_code(build_root(a, fh, o), false) == canonical_code(build_root(fresh, fh, o), false));
  CHECK_THROWS_AS(LatticeContext::minimal(Plumbing({-1, -1}, {{0, 1}}), {1, 1}), Error);
}
