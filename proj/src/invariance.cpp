#include "plumbroot/invariance.hpp"

#include <random>

#include "plumbroot/root.hpp"
#include "plumbroot/series.hpp"

namespace plumbroot {

MoveTrial make_move_trial(const Plumbing& p, const SpincRepK& k,
                          const std::vector<NeumannMove>& moves) {
  MoveTrial t{p, k, moves, p, k};
  for (const auto& mv : moves) {
    t.k_after = transport_spinc(t.after, mv, t.k_after);
    t.after = apply_move(t.after, mv).plumbing;
  }
  return t;
}

MoveTrial random_move_trial(const Plumbing& p, std::uint64_t seed, int max_moves) {
  std::mt19937_64 rng(seed);
  auto classes = enumerate_spinc(p);
  SpincRepK k = classes[std::uniform_int_distribution<std::size_t>(0, classes.size() - 1)(rng)];
  const int n = max_moves < 1 ? 0 : std::uniform_int_distribution<int>(1, max_moves)(rng);
  std::vector<NeumannMove> moves;
  Plumbing cur = p;
  for (int i = 0; i < n; ++i) {
    auto options = applicable_moves(cur);
    NeumannMove mv = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    moves.push_back(mv);
    cur = apply_move(cur, mv).plumbing;
  }
  return make_move_trial(p, k, moves);
}

InvarianceResult compare_across_moves(const MoveTrial& trial, const AdmissibleFamily& f,
                                      const Rational& order) {
  const LatticeContext before = LatticeContext::minimal(trial.before, trial.k_before);
  const LatticeContext after = LatticeContext::minimal(trial.after, trial.k_after);
  WeightedGradedRoot rb = build_root(before, f, {std::nullopt, order});
  WeightedGradedRoot ra = build_root(after, f, {std::nullopt, order});
  // Compare at the common top; the lower root is rebuilt up to it.
  if (rb.top < ra.top) rb = build_root(before, f, {ra.top, order});
  if (ra.top < rb.top) ra = build_root(after, f, {rb.top, order});
  InvarianceResult r;
  r.code_before = canonical_code(rb, false);
  r.code_after = canonical_code(ra, false);
  r.root_equal = r.code_before == r.code_after;
  r.series_equal = series_equal(two_var_series(before, f, order), two_var_series(after, f, order));
  return r;
}

}  // namespace plumbroot
