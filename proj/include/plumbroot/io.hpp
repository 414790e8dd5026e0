#pragma once

#include <string>

#include <json.hpp>

#include "plumbroot/error.hpp"
#include "plumbroot/root.hpp"
#include "plumbroot/series.hpp"

namespace plumbroot {

// {"d","chi_min","top","stab_level","vertices":[{"id","level","hf_grading",
// "parent","weight":[[q,t,c],...]}]}; rationals as "p/q" strings, parent null
// at the top.
nlohmann::ordered_json root_to_json(const WeightedGradedRoot& root);
// Graphviz digraph with edges from each vertex to its parent.
std::string root_to_dot(const WeightedGradedRoot& root);
// One line per vertex: "hf <grading> [id <- parent]: <weight>".
std::string root_to_text(const WeightedGradedRoot& root);

// [{"q":"p/q","t":n,"c":"p/q"}, ...] sorted by (q, t).
nlohmann::ordered_json series_to_json(const TwoVarSeries& s);
// [{"q":"p/q","c":"p/q"}, ...] sorted by q.
nlohmann::ordered_json series_to_json(const QSeries& s);

// {"error":"<kind>","message":"..."}.
nlohmann::ordered_json error_to_json(const Error& e);

}  // namespace plumbroot
