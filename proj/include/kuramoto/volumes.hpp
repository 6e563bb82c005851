#pragma once

#include <set>

#include "kuramoto/norms.hpp"

namespace kuramoto {

// Closed-form (N-1)-dimensional Lebesgue volumes of the named polytopes:
//   I_DB: N^(N-1/2)
//   C_DB: 2^(N-1) N^(N-3/2)
//   C_CS: N^(N-1/2) (2 tau_N / N)^(N-1)
//   I_CS: sqrt(N) (2(N-1))! / ((N-1)!)^3 * tau_N^(N-1)
// Evaluated in log space for n > 20. Composite kinds are rejected.
double exact_volume(const PolytopeSpec& spec);

// Number of permutations of {1..n} with descent set exactly I, by exhaustive
// enumeration (n <= 9). Memoized per (n, I).
std::uint64_t descent_count(int n, const std::set<int>& descents);

// Permutahedron volume of conv(Sym(x)) via the signed sum over compositions
// of N-1 with descent-set counts (n <= 8). Lattice normalization by default;
// euclidean=true multiplies by sqrt(N) (the Gram factor) to give the
// Euclidean (N-1)-volume.
double postnikov_volume(std::span<const double> x, bool euclidean = false);

// sqrt(N) C(2(N-1), N-1) / (N-1)!, the Euclidean volume of the unit CS
// permutahedron conv(Sym(1,0,...,0,-1)); times tau_N^(N-1) this is
// exact_volume(I_CS).
double unit_cs_volume_closed_form(int n);

}  // namespace kuramoto
