#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumbroot/intmat.hpp"
#include "plumbroot/rational.hpp"

namespace plumbroot {

using Edge = std::pair<int, int>;

// A weighted plumbing tree. Vertices are 0-based; the edge list is kept
// normalized (each pair ordered i < j, list sorted) so that equality is
// structural.
class Plumbing {
 public:
  // Validates: tree (connected, s-1 edges), no loops, no duplicate edges,
  // indices in range. Throws Error{NotATree | BadIndex}.
  Plumbing(std::vector<std::int64_t> weights, std::vector<Edge> edges);

  int size() const noexcept { return static_cast<int>(weights_.size()); }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  std::int64_t weight(int v) const { return weights_[v]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  IntVec degrees() const;
  bool adjacent(int i, int j) const;

  friend bool operator==(const Plumbing& a, const Plumbing& b) {
    return a.weights_ == b.weights_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Canonical JSON form {"weights":[...],"edges":[[i,j],...]}.
Plumbing parse_plumbing(std::string_view text);
std::string to_json(const Plumbing& p);
// Human-readable echo: "w(i): m_i" per vertex, "e: i-j" per edge.
std::string to_text(const Plumbing& p);

// Plumbing permuted so that old vertex v becomes perm[v].
Plumbing permute(const Plumbing& p, const std::vector<int>& perm);

// The intersection form M together with its exact determinant and adjugate.
class IntersectionMatrix {
 public:
  explicit IntersectionMatrix(const Plumbing& p);
  explicit IntersectionMatrix(IntMatrix m);

  int size() const noexcept { return static_cast<int>(m_.rows()); }
  const IntMatrix& matrix() const noexcept { return m_; }
  std::int64_t operator()(int i, int j) const { return m_(i, j); }
  std::int64_t det() const noexcept { return det_; }
  const IntMatrix& adjugate() const noexcept { return adj_; }
  // Entry (i, j) of M^{-1}. Requires det != 0.
  Rational inverse(int i, int j) const;
  // x^T M y over the integers.
  std::int64_t form(const IntVec& x, const IntVec& y) const;
  // x^T M^{-1} x for rational-free integer input.
  Rational inverse_form(const IntVec& x) const;
  // Solve M y = b exactly; nullopt if y is not integral.
  std::optional<IntVec> solve_integral(const IntVec& b) const;
  // M u with u = (1, ..., 1).
  IntVec times_ones() const;

 private:
  IntMatrix m_;
  std::int64_t det_ = 0;
  IntMatrix adj_;
};

IntersectionMatrix intersection_matrix(const Plumbing& p);

// Sylvester criterion: all leading principal minors of -M positive.
bool is_negative_definite(const IntersectionMatrix& m);
bool is_negative_definite(const IntMatrix& m);

enum class MoveKind { A_blowup, B_blowup, A_blowdown, B_blowdown };

std::string_view to_string(MoveKind kind) noexcept;

struct NeumannMove {
  MoveKind kind;
  // A_blowup: the edge {site.first, site.second}. Otherwise site.first is the
  // vertex (and site.second is ignored).
  Edge site;

  static NeumannMove a_blowup(int i, int j) { return {MoveKind::A_blowup, {i, j}}; }
  static NeumannMove b_blowup(int v) { return {MoveKind::B_blowup, {v, -1}}; }
  static NeumannMove a_blowdown(int v) { return {MoveKind::A_blowdown, {v, -1}}; }
  static NeumannMove b_blowdown(int v) { return {MoveKind::B_blowdown, {v, -1}}; }
};

// old index -> new index, -1 for a removed vertex.
using IndexMap = std::vector<int>;

struct MoveResult {
  Plumbing plumbing;
  IndexMap index_map;
};

// Blow-ups insert the new -1 vertex at index 0 and shift every old index by
// one. Blow-downs remove the vertex and close the gap. Throws
// Error{MoveNotApplicable}.
MoveResult apply_move(const Plumbing& p, const NeumannMove& mv);

// All moves applicable to p (every edge, every vertex, every eligible
// blow-down site), in a deterministic order.
std::vector<NeumannMove> applicable_moves(const Plumbing& p);

// Number of weight resamples random_plumbing tries before giving up.
inline constexpr int kGenerationRetries = 10000;

// Deterministic negative definite tree with 1..s_max vertices and weights in
// [-12, -1]. Throws Error{GenerationFailed} after kGenerationRetries.
Plumbing random_plumbing(std::uint64_t seed, int s_max);

}  // namespace plumbroot
