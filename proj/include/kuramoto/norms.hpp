#pragma once

#include "kuramoto/core.hpp"
#include "kuramoto/points.hpp"

namespace kuramoto {

enum class PolyKind {
  I_DB,
  I_CS,
  I_CS_gen,
  C_DB,
  C_CS,
  C_CS_gen,
  C_CS_all,
  Intersection,
  HullOfUnion,
};

/// Symbolic description of a polytope: one of the named families, an
/// intersection of circumscribed polytopes, or the convex hull of a union
/// of inscribed polytopes.
struct PolytopeSpec {
  PolyKind kind;
  int n = 0;
  int j = 1;  // only for *_gen kinds
  std::vector<PolytopeSpec> members;  // Intersection / HullOfUnion

  static PolytopeSpec named(PolyKind kind, int n, int j = 1);
  static PolytopeSpec intersection(std::vector<PolytopeSpec> members);
  static PolytopeSpec hull_of_union(std::vector<PolytopeSpec> members);

  // Grammar: I_DB(4), I_CS(4), I_CS_gen(10,3), C_DB(4), C_CS(4),
  // C_CS_gen(10,3), C_CS_all(10), Intersect(a,b,...), Hull(a,b,...).
  static PolytopeSpec parse(const std::string& text);
  std::string str() const;

  bool is_inscribed() const;
  bool is_circumscribed() const;
};

// Largest spread attained on the unit ball of the spec's norm. This sizes
// the smallest sampling box that still covers the polytope: every family
// fits in {spread <= 2 tau_N} except C_DB, which reaches spread 2(N-1).
double max_spread_on_unit_ball(const PolytopeSpec& spec);

// The norm whose unit sublevel set is the given polytope. HullOfUnion has
// no closed form (membership goes through the LP) and is rejected here.
double norm_for(const PolytopeSpec& spec, const FrequencyVector& y);

// Generic circumscribed norm max_{x in R} <y,x>/<x,x> by brute force over
// the family; the oracle counterpart of the closed forms above.
double circ_norm_generic(const VertexFamily& family, const FrequencyVector& y);

/// One term of the greedy L1 decomposition: coeff * (e_i - e_j), coeff > 0.
struct PairTerm {
  double coeff;
  int i;
  int j;
};

// Writes a mean-zero y as sum of at most N-1 positive multiples of pair
// vectors e_i - e_j, with sum of coefficients = |y|_1 / 2. Each step zeroes
// the smallest-magnitude nonzero entry.
std::vector<PairTerm> greedy_l1_decompose(const FrequencyVector& y);

}  // namespace kuramoto
