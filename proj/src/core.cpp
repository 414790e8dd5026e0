#include "plumbroot/core.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace plumbroot {

namespace {

std::vector<Edge> normalize_edges(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

Plumbing::Plumbing(std::vector<std::int64_t> weights, std::vector<Edge> edges)
    : weights_(std::move(weights)), edges_(normalize_edges(std::move(edges))) {
  const int s = size();
  if (s == 0) throw Error(ErrorKind::MalformedInput, "plumbing has no vertices");
  adjacency_.assign(s, {});
  for (const auto& [i, j] : edges_) {
    if (i < 0 || j >= s) {
      throw Error(ErrorKind::BadIndex, "edge index out of range: " +
                                           std::to_string(i) + "-" + std::to_string(j));
    }
    if (i == j) throw Error(ErrorKind::NotATree, "self-loop at vertex " + std::to_string(i));
  }
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorKind::NotATree, "repeated edge");
  }
  if (static_cast<int>(edges_.size()) != s - 1) {
    throw Error(ErrorKind::NotATree, "a tree on " + std::to_string(s) + " vertices needs " +
                                         std::to_string(s - 1) + " edges");
  }
  for (const auto& [i, j] : edges_) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  // s - 1 edges plus connectivity is a tree.
  std::vector<char> seen(s, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != s) throw Error(ErrorKind::NotATree, "plumbing graph is disconnected");
}

IntVec Plumbing::degrees() const {
  IntVec d(size());
  for (int v = 0; v < size(); ++v) d[v] = degree(v);
  return d;
}

bool Plumbing::adjacent(int i, int j) const {
  const auto& nb = adjacency_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

Plumbing parse_plumbing(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("edges") ||
      !doc["weights"].is_array() || !doc["edges"].is_array()) {
    throw Error(ErrorKind::MalformedInput,
                "expected {\"weights\":[...],\"edges\":[[i,j],...]}");
  }
  std::vector<std::int64_t> weights;
  for (const auto& w : doc["weights"]) {
    if (!w.is_number_integer()) throw Error(ErrorKind::MalformedInput, "weights must be integers");
    weights.push_back(w.get<std::int64_t>());
  }
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw Error(ErrorKind::MalformedInput, "edges must be pairs of integers");
    }
    auto i = e[0].get<std::int64_t>(), j = e[1].get<std::int64_t>();
    auto s = static_cast<std::int64_t>(weights.size());
    if (i < 0 || j < 0 || i >= s || j >= s) {
      throw Error(ErrorKind::BadIndex, "edge index out of range: " + e.dump());
    }
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return Plumbing(std::move(weights), std::move(edges));
}

std::string to_json(const Plumbing& p) {
  nlohmann::json doc;
  doc["weights"] = p.weights();
  doc["edges"] = nlohmann::json::array();
  for (const auto& [i, j] : p.edges()) doc["edges"].push_back({i, j});
  return doc.dump();
}

std::string to_text(const Plumbing& p) {
  std::ostringstream os;
  for (int v = 0; v < p.size(); ++v) os << "w(" << v << "): " << p.weight(v) << "\n";
  for (const auto& [i, j] : p.edges()) os << "e: " << i << "-" << j << "\n";
  return os.str();
}

Plumbing permute(const Plumbing& p, const std::vector<int>& perm) {
  std::vector<std::int64_t> w(p.size());
  for (int v = 0; v < p.size(); ++v) w[perm[v]] = p.weight(v);
  std::vector<Edge> edges;
  for (const auto& [i, j] : p.edges()) edges.emplace_back(perm[i], perm[j]);
  return Plumbing(std::move(w), std::move(edges));
}

IntersectionMatrix::IntersectionMatrix(const Plumbing& p)
    : IntersectionMatrix([&] {
        IntMatrix m(p.size(), p.size());
        for (int v = 0; v < p.size(); ++v) m(v, v) = p.weight(v);
        for (const auto& [i, j] : p.edges()) m(i, j) = m(j, i) = 1;
        return m;
      }()) {}

IntersectionMatrix::IntersectionMatrix(IntMatrix m)
    : m_(std::move(m)), det_(determinant(m_)), adj_(plumbroot::adjugate(m_)) {}

Rational IntersectionMatrix::inverse(int i, int j) const {
  return Rational(adj_(i, j), det_);
}

std::int64_t IntersectionMatrix::form(const IntVec& x, const IntVec& y) const {
  i128 acc = 0;
  for (int i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < size(); ++j) {
      acc = checked_add128(acc, checked_mul128(i128(x[i]) * m_(i, j), y[j]));
    }
  }
  return checked_narrow(acc);
}

Rational IntersectionMatrix::inverse_form(const IntVec& x) const {
  i128 acc = 0;
  for (int i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < size(); ++j) {
      acc = checked_add128(acc, checked_mul128(i128(x[i]) * adj_(i, j), x[j]));
    }
  }
  return Rational::from128(acc, det_);
}

std::optional<IntVec> IntersectionMatrix::solve_integral(const IntVec& b) const {
  IntVec y(size());
  for (int i = 0; i < size(); ++i) {
    i128 acc = 0;
    for (int j = 0; j < size(); ++j) acc = checked_add128(acc, i128(adj_(i, j)) * b[j]);
    if (acc % det_ != 0) return std::nullopt;
    y[i] = checked_narrow(acc / det_);
  }
  return y;
}

IntVec IntersectionMatrix::times_ones() const {
  IntVec r(size(), 0);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) r[i] += m_(i, j);
  }
  return r;
}

IntersectionMatrix intersection_matrix(const Plumbing& p) { return IntersectionMatrix(p); }

bool is_negative_definite(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix neg(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) neg(i, j) = -m(i, j);
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k) {
    idx.push_back(k);
    if (determinant(neg.principal(idx)) <= 0) return false;
  }
  return true;
}

bool is_negative_definite(const IntersectionMatrix& m) { return is_negative_definite(m.matrix()); }

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::A_blowup: return "A_blowup";
    case MoveKind::B_blowup: return "B_blowup";
    case MoveKind::A_blowdown: return "A_blowdown";
    case MoveKind::B_blowdown: return "B_blowdown";
  }
  return "?";
}

namespace {

[[noreturn]] void not_applicable(const std::string& what) {
  throw Error(ErrorKind::MoveNotApplicable, what);
}

MoveResult blow_down(const Plumbing& p, int v, int want_degree) {
  const int s = p.size();
  if (v < 0 || v >= s) not_applicable("vertex " + std::to_string(v) + " out of range");
  if (s == 1) not_applicable("cannot blow down the only vertex");
  if (p.weight(v) != -1 || p.degree(v) != want_degree) {
    not_applicable("vertex " + std::to_string(v) + " must have weight -1 and degree " +
                   std::to_string(want_degree));
  }
  IndexMap map(s);
  for (int w = 0, next = 0; w < s; ++w) map[w] = (w == v) ? -1 : next++;
  std::vector<std::int64_t> weights;
  for (int w = 0; w < s; ++w) {
    if (w == v) continue;
    weights.push_back(p.adjacent(v, w) ? p.weight(w) + 1 : p.weight(w));
  }
  std::vector<Edge> edges;
  for (const auto& [i, j] : p.edges()) {
    if (i != v && j != v) edges.emplace_back(map[i], map[j]);
  }
  if (want_degree == 2) {
    const auto& nb = p.neighbors(v);
    edges.emplace_back(map[nb[0]], map[nb[1]]);
  }
  return {Plumbing(std::move(weights), std::move(edges)), std::move(map)};
}

}  // namespace

MoveResult apply_move(const Plumbing& p, const NeumannMove& mv) {
  const int s = p.size();
  switch (mv.kind) {
    case MoveKind::A_blowup:
    case MoveKind::B_blowup: {
      auto [i, j] = mv.site;
      const bool a = mv.kind == MoveKind::A_blowup;
      if (i < 0 || i >= s || (a && (j < 0 || j >= s))) {
        not_applicable("blow-up site out of range");
      }
      if (a && !p.adjacent(i, j)) {
        not_applicable("no edge " + std::to_string(i) + "-" + std::to_string(j));
      }
      IndexMap map(s);
      std::iota(map.begin(), map.end(), 1);
      std::vector<std::int64_t> weights{-1};
      for (int v = 0; v < s; ++v) {
        bool touched = v == i || (a && v == j);
        weights.push_back(touched ? p.weight(v) - 1 : p.weight(v));
      }
      std::vector<Edge> edges;
      for (const auto& e : p.edges()) {
        if (a && ((e.first == i && e.second == j) || (e.first == j && e.second == i))) continue;
        edges.emplace_back(e.first + 1, e.second + 1);
      }
      edges.emplace_back(0, i + 1);
      if (a) edges.emplace_back(0, j + 1);
      return {Plumbing(std::move(weights), std::move(edges)), std::move(map)};
    }
    case MoveKind::A_blowdown: return blow_down(p, mv.site.first, 2);
    case MoveKind::B_blowdown: return blow_down(p, mv.site.first, 1);
  }
  not_applicable("unknown move");
}

std::vector<NeumannMove> applicable_moves(const Plumbing& p) {
  std::vector<NeumannMove> out;
  for (const auto& [i, j] : p.edges()) out.push_back(NeumannMove::a_blowup(i, j));
  for (int v = 0; v < p.size(); ++v) out.push_back(NeumannMove::b_blowup(v));
  if (p.size() > 1) {
    for (int v = 0; v < p.size(); ++v) {
      if (p.weight(v) != -1) continue;
      if (p.degree(v) == 2) out.push_back(NeumannMove::a_blowdown(v));
      if (p.degree(v) == 1) out.push_back(NeumannMove::b_blowdown(v));
    }
  }
  return out;
}

Plumbing random_plumbing(std::uint64_t seed, int s_max) {
  if (s_max < 1) throw Error(ErrorKind::MalformedInput, "s_max must be at least 1");
  std::mt19937_64 rng(seed);
  const int s = std::uniform_int_distribution<int>(1, s_max)(rng);
  std::vector<Edge> edges;
  for (int v = 1; v < s; ++v) {
    edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  std::uniform_int_distribution<std::int64_t> weight(-12, -1);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    std::vector<std::int64_t> w(s);
    for (auto& x : w) x = weight(rng);
    Plumbing p(std::move(w), edges);
    if (is_negative_definite(IntersectionMatrix(p))) return p;
  }
  throw Error(ErrorKind::GenerationFailed,
              "no negative definite weighting found after " +
                  std::to_string(kGenerationRetries) + " attempts");
}

}  // namespace plumbroot
