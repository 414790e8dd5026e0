#pragma once

#include <vector>

#include "plumbroot/core.hpp"
#include "plumbroot/intmat.hpp"
#include "plumbroot/rational.hpp"

namespace plumbroot {

// Characteristic vector k in m + 2Z^s; a spin^c class is its coset mod 2MZ^s.
using SpincRepK = IntVec;
// Vector a in delta + 2Z^s; same quotient in the a-convention.
using SpincRepA = IntVec;

bool is_characteristic(const Plumbing& p, const SpincRepK& k);
void require_characteristic(const Plumbing& p, const SpincRepK& k);

// Canonical representative of [k]: writing k = m + 2z, the Smith coordinates
// U z are reduced into the box [0, d_i).
SpincRepK canonical_spinc(const Plumbing& p, const SpincRepK& k);

// One canonical representative per class, |det M| in total, sorted.
std::vector<SpincRepK> enumerate_spinc(const Plumbing& p);

// k1 ~ k2 iff M^{-1} (k1 - k2) / 2 is integral. Throws NotCharacteristic.
bool same_spinc(const Plumbing& p, const SpincRepK& k1, const SpincRepK& k2);

SpincRepK conjugate(const SpincRepK& k);
bool is_self_conjugate(const Plumbing& p, const SpincRepK& k);

// a = k - Mu.
SpincRepA k_to_a(const Plumbing& p, const SpincRepK& k);
SpincRepK a_to_k(const Plumbing& p, const SpincRepA& a);

// k on the pre-move plumbing p to the corresponding class after mv. For
// blow-downs the representative is first moved so that the inverse blow-up
// formula applies. Throws MoveMismatch on a length mismatch.
SpincRepK transport_spinc(const Plumbing& p, const NeumannMove& mv, const SpincRepK& k);

// The a-convention transport, blow-ups only.
SpincRepA transport_a(const Plumbing& p, const NeumannMove& mv, const SpincRepA& a);

// chi_k(x) = -(k.x + x^T M x) / 2.
std::int64_t chi(const IntersectionMatrix& m, const SpincRepK& k, const IntVec& x);

// Every x with |(2Mx + k)_i| <= -m_i for all i. Each weak local minimum of
// chi_k (no unit step decreases it) is in this set. Sorted.
std::vector<IntVec> local_min_candidates(const Plumbing& p, const SpincRepK& k);

// min chi_k over Z^s.
std::int64_t min_chi(const Plumbing& p, const SpincRepK& k);

// k + 2Mx0 with x0 the rounding of the real minimiser -M^{-1}k/2 of chi_k.
// Same class, small entries.
SpincRepK reduce_representative(const Plumbing& p, const SpincRepK& k);

// k + 2My where y is the lexicographically least minimiser of chi_k; the
// result has min chi = 0 attained at the origin (and maximal square).
SpincRepK minimal_representative(const Plumbing& p, const SpincRepK& k);

// d(-Y, [k]) = -(k^2 - 8 min chi_k + s) / 4 with k^2 = k^T M^{-1} k.
Rational d_invariant(const Plumbing& p, const SpincRepK& k);

}  // namespace plumbroot
