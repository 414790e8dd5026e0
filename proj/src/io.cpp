#include "plumbroot/io.hpp"

#include <sstream>

namespace plumbroot {

namespace {

nlohmann::ordered_json weight_json(const TwoVarPoly& w) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : w.terms()) out.push_back({t.q.str(), t.t, t.c.str()});
  return out;
}

}  // namespace

nlohmann::ordered_json root_to_json(const WeightedGradedRoot& root) {
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : root.vertices) {
    vs.push_back({{"id", v.id},
                  {"level", v.level},
                  {"hf_grading", root.hf_grading(v).str()},
                  {"parent", v.parent < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v.parent)},
                  {"weight", weight_json(v.weight)}});
  }
  return {{"d", root.d_invariant.str()},
          {"chi_min", root.chi_min},
          {"top", root.top},
          {"stab_level", root.stabilization_level},
          {"vertices", vs}};
}

std::string root_to_dot(const WeightedGradedRoot& root) {
  std::ostringstream os;
  os << "digraph root {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& v : root.vertices) {
    os << "  v" << v.id << " [label=\"" << root.hf_grading(v).str() << "\\n" << v.weight.str()
       << "\"];\n";
  }
  for (const auto& v : root.vertices) {
    if (v.parent >= 0) os << "  v" << v.id << " -> v" << v.parent << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string root_to_text(const WeightedGradedRoot& root) {
  std::ostringstream os;
  os << "d = " << root.d_invariant.str() << "\n";
  for (const auto& v : root.vertices) {
    os << "hf " << root.hf_grading(v).str() << " [" << v.id;
    if (v.parent >= 0) os << " <- " << v.parent;
    os << "]: " << v.weight.str() << "\n";
  }
  return os.str();
}

nlohmann::ordered_json series_to_json(const TwoVarSeries& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : s.poly.terms()) out.push_back({{"q", t.q.str()}, {"t", t.t}, {"c", t.c.str()}});
  return out;
}

nlohmann::ordered_json series_to_json(const QSeries& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [q, c] : s.terms) out.push_back({{"q", q.str()}, {"c", c.str()}});
  return out;
}

nlohmann::ordered_json error_to_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

}  // namespace plumbroot
