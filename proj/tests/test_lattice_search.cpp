#include <doctest.h>

#include <random>

#include "plumbroot/core.hpp"
#include "plumbroot/lattice_search.hpp"

using namespace plumbroot;

namespace {

SearchProblem ellipsoid(const Plumbing& p, const IntVec& k, std::int64_t bound) {
  IntersectionMatrix m(p);
  SearchProblem prob;
  const int s = p.size();
  prob.a = IntMatrix(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) prob.a(i, j) = -m(i, j);
  }
  prob.b.resize(s);
  for (int i = 0; i < s; ++i) prob.b[i] = -k[i];
  prob.bound = bound;
  return prob;
}

// Scan half-width; the first test asserts the boundary is never reached.
constexpr std::int64_t kScanRadius = 16;

}  // namespace

TEST_CASE("ellipsoid enumeration matches the box scan") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Plumbing p = random_plumbing(seed, 3);
    std::mt19937_64 rng(seed);
    IntVec k(p.size());
    for (int i = 0; i < p.size(); ++i) {
      k[i] = p.weight(i) + 2 * std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
    }
    for (std::int64_t bound : {0, 3, 10, 24}) {
      SearchProblem prob = ellipsoid(p, k, bound);
      IntVec lo(p.size(), -kScanRadius), hi(p.size(), kScanRadius);
      auto fast = collect_points(prob);
      auto slow = scan_box(prob, lo, hi);
      for (const auto& x : slow) {
        for (auto v : x) REQUIRE(std::llabs(v) < kScanRadius);
      }
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("row constraints prune exactly") {
  Plumbing p({-2, -3, -2}, {{0, 1}, {1, 2}});
  IntersectionMatrix m(p);
  IntVec k{0, -1, 0};
  SearchProblem prob = ellipsoid(p, k, 30);
  // (2Mx + k)_0 in {-2, 2} and (2Mx + k)_2 in [-2, 2].
  RowConstraint r0;
  for (int j = 0; j < 3; ++j) r0.terms.emplace_back(j, 2 * m(0, j));
  r0.offset = k[0];
  r0.kind = RowConstraint::Kind::Finite;
  r0.values = {-2, 2};
  RowConstraint r2;
  for (int j = 0; j < 3; ++j) r2.terms.emplace_back(j, 2 * m(2, j));
  r2.offset = k[2];
  r2.kind = RowConstraint::Kind::Interval;
  r2.lo = -2;
  r2.hi = 2;
  prob.rows = {r0, r2};
  IntVec lo(3, -kScanRadius), hi(3, kScanRadius);
  auto fast = collect_points(prob);
  auto slow = scan_box(prob, lo, hi);
  CHECK(!slow.empty());
  CHECK(fast == slow);
}

TEST_CASE("box option restricts coordinates") {
  Plumbing p({-2, -2}, {{0, 1}});
  SearchProblem prob = ellipsoid(p, {0, 0}, 40);
  prob.box = std::make_pair(IntVec{-1, 0}, IntVec{2, 1});
  auto fast = collect_points(prob);
  auto slow = scan_box(prob, IntVec{-kScanRadius, -kScanRadius}, IntVec{kScanRadius, kScanRadius});
  CHECK(fast == slow);
  for (const auto& x : fast) {
    CHECK(x[0] >= -1);
    CHECK(x[1] <= 1);
  }
}

TEST_CASE("empty ellipsoid yields nothing") {
  Plumbing p({-3}, {});
  SearchProblem prob = ellipsoid(p, {1}, -1);
  CHECK(collect_points(prob).empty());
}
