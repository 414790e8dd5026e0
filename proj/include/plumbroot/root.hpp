#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "plumbroot/admissible.hpp"
#include "plumbroot/core.hpp"
#include "plumbroot/poly.hpp"
#include "plumbroot/rational.hpp"
#include "plumbroot/spinc.hpp"

namespace plumbroot {

// Everything the lattice side needs for one (plumbing, k).
class LatticeContext {
 public:
  // Throws NotNegativeDefinite or NotCharacteristic.
  LatticeContext(Plumbing p, SpincRepK k);

  // Context for k + 2My with y the least minimiser of chi_k, so that
  // min chi = 0. Reuses the candidate search done for k.
  static LatticeContext minimal(Plumbing p, const SpincRepK& k);

  const Plumbing& plumbing() const noexcept { return p_; }
  const IntersectionMatrix& matrix() const noexcept { return m_; }
  const SpincRepK& k() const noexcept { return k_; }
  const SpincRepA& a() const noexcept { return a_; }
  // Mu = m + delta.
  const IntVec& mu() const noexcept { return mu_; }
  const Rational& delta() const noexcept { return delta_; }
  std::int64_t theta() const noexcept { return theta_; }
  int size() const noexcept { return p_.size(); }

  // Computed once per context and shared by copies.
  const std::vector<IntVec>& local_min_candidates() const;
  const std::vector<std::int64_t>& birth_levels() const;

 private:
  struct Cache {
    std::once_flag cands_once, births_once;
    std::vector<IntVec> cands;
    std::vector<std::int64_t> births;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  Plumbing p_;
  IntersectionMatrix m_;
  SpincRepK k_;
  SpincRepA a_;
  IntVec mu_;
  Rational delta_;
  std::int64_t theta_ = 0;
};

std::int64_t chi(const LatticeContext& ctx, const IntVec& x);

// (eps_k(x), theta_k(x)).
std::pair<Rational, std::int64_t> epsilon_theta(const LatticeContext& ctx, const IntVec& x);

std::vector<IntVec> local_min_candidates(const LatticeContext& ctx);

// Levels at which a new component of S_j appears, ascending with repeats.
// A birth is a plateau of equal chi whose outside neighbours are all higher;
// its points are all local-minimum candidates, which makes this exact.
std::vector<std::int64_t> birth_levels(const LatticeContext& ctx);

// One lattice point with the quantities the builders need.
struct PointInfo {
  const IntVec& x;
  std::int64_t chi;        // chi_k(x)
  std::int64_t x_dot_mu;   // <x, u> = x.(m + delta)
  Rational weight;         // F_{Gamma,k}(x); 0 when no family was given

  std::int64_t two_chi_a() const { return 2 * chi + x_dot_mu; }
};

using PointCallback = std::function<void(const PointInfo&)>;

// Points with chi_k(x) <= j. With a family, only points where F is nonzero.
void for_each_sublevel_point(const LatticeContext& ctx, std::int64_t j,
                             const AdmissibleFamily* family, const PointCallback& cb);

// Support points (F nonzero) with 2 chi_a(x) <= bound.
void for_each_series_point(const LatticeContext& ctx, std::int64_t bound,
                           const AdmissibleFamily& family, const PointCallback& cb);

// F(x) q^eps t^theta for one point, added into poly.
void add_point_weight(const LatticeContext& ctx, const PointInfo& pt, TwoVarPoly& poly);

// Components of S_j under unit steps, each sorted, ordered by least member.
std::vector<std::vector<IntVec>> sublevel_components(const LatticeContext& ctx, std::int64_t j);

enum class GradingMode { Chi, ChiMinZero, HfGrading };

struct RootVertex {
  int id = 0;
  std::int64_t level = 0;  // chi value
  TwoVarPoly weight;
  int parent = -1;
  std::vector<int> children;
  IntVec representative;  // least lattice point of the component
};

struct WeightedGradedRoot {
  std::vector<RootVertex> vertices;  // ordered by level, then representative
  std::int64_t chi_min = 0;
  std::int64_t top = 0;
  std::int64_t auto_top = 0;
  // First level from which every S_j is connected (no later births).
  std::int64_t stabilization_level = 0;
  Rational d_invariant;
  // Set when an explicit top was below the automatic one.
  bool truncated_below_stabilization = false;
  GradingMode mode = GradingMode::Chi;
  // Subtracted from chi levels in ChiMinZero mode.
  std::int64_t level_shift = 0;

  std::vector<int> at_level(std::int64_t level) const;
  // Displayed label of a vertex under the current mode.
  Rational label(const RootVertex& v) const;
  Rational hf_grading(const RootVertex& v) const;
};

struct RootOptions {
  std::optional<std::int64_t> top;  // nullopt: automatic
  // Series order the automatic top must capture in the top weight.
  Rational order = Rational(10);
};

// Automatic top: the first level j >= max(births_end, n_N) with S_j connected,
// where births_end is the last birth level and n_N the largest chi_k over
// support points with 2 chi_a <= order.
std::int64_t auto_top(const LatticeContext& ctx, const AdmissibleFamily& family,
                      const Rational& order);

WeightedGradedRoot build_root(const LatticeContext& ctx, const AdmissibleFamily& family,
                              const RootOptions& options = {});

WeightedGradedRoot normalize_root(WeightedGradedRoot root, GradingMode mode);

// Recursive code of the top vertex; equal codes iff isomorphic weighted
// graded roots. relative: levels measured down from the top. Throws
// NotStabilized when the top level has more than one vertex.
std::string canonical_code(const WeightedGradedRoot& root, bool relative);

struct ModuleRanks {
  std::vector<std::pair<std::int64_t, int>> rank_per_level;  // (level, count)
  std::vector<std::vector<int>> u_action;                    // children per vertex
};

ModuleRanks module_ranks(const WeightedGradedRoot& root);

}  // namespace plumbroot
