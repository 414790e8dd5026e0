#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plumbroot/admissible.hpp"
#include "plumbroot/core.hpp"
#include "plumbroot/rational.hpp"
#include "plumbroot/spinc.hpp"

namespace plumbroot {

// A plumbing with a spin^c class, a move sequence, and the transported pair.
struct MoveTrial {
  Plumbing before;
  SpincRepK k_before;
  std::vector<NeumannMove> moves;
  Plumbing after;
  SpincRepK k_after;
};

// Uniform class from enumerate_spinc, then 1..max_moves moves each drawn
// uniformly from applicable_moves.
MoveTrial random_move_trial(const Plumbing& p, std::uint64_t seed, int max_moves);

// Applies and transports a given sequence.
MoveTrial make_move_trial(const Plumbing& p, const SpincRepK& k,
                          const std::vector<NeumannMove>& moves);

struct InvarianceResult {
  bool root_equal = false;
  bool series_equal = false;
  std::string code_before, code_after;
  explicit operator bool() const noexcept { return root_equal && series_equal; }
};

// Absolute canonical codes of both weighted roots, built to a common top (the
// larger automatic top) from minimal representatives, plus the two series.
InvarianceResult compare_across_moves(const MoveTrial& trial, const AdmissibleFamily& f,
                                      const Rational& order);

}  // namespace plumbroot
