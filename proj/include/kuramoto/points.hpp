#pragma once

#include <cstdint>
#include <functional>

#include "kuramoto/core.hpp"

namespace kuramoto {

// Chopra-Spong constant tau_N = max_phi [(N-2) sin(phi) + sin(2 phi)],
// evaluated in closed form. Satisfies N-2 <= tau_N <= N-1.
double tau(int n);

// Generalized constant tau_{N,j} = max_phi [(N-2j) sin(phi) + j sin(2 phi)],
// closed form; tau_general(n, 1) == tau(n). Requires 2j <= n.
double tau_general(int n, int j);

// The phi maximizing (n-2j) sin(phi) + j sin(2 phi) over [0, pi].
double tau_maximizer(int n, int j);

enum class FamilyKind { DB, CS };

/// One of the boundary point families: the Dorfler-Bullo vectors (k entries
/// equal to N-k and N-k entries equal to -k) or the generalized Chopra-Spong
/// vectors (permutations of tau_{N,j} (1^(j), (-1)^(j), 0^(N-2j))).
/// Vertices are generated lazily in a fixed lexicographic order.
class VertexFamily {
public:
  static VertexFamily db(int n);
  static VertexFamily cs(int n, int j = 1);

  FamilyKind kind() const { return kind_; }
  int n() const { return n_; }
  int j() const { return j_; }

  // Number of vertices: 2^n - 2 for DB, C(n,j) C(n-j,j) 2^... for CS
  // (n(n-1) when j = 1).
  std::uint64_t count() const;

  // Calls fn for every vertex, in generation order.
  void for_each(const std::function<void(std::span<const double>)>& fn) const;

  // Materializes all vertices; refuses n > 16 (exponential count for DB).
  std::vector<Vec> materialize() const;

private:
  VertexFamily(FamilyKind kind, int n, int j) : kind_(kind), n_(n), j_(j) {}
  FamilyKind kind_;
  int n_;
  int j_;
};

inline VertexFamily db_points(int n) { return VertexFamily::db(n); }
inline VertexFamily cs_points(int n, int j = 1) { return VertexFamily::cs(n, j); }

// The frequency vector for which theta is a fixed point of the flow:
// omega_i = -sum_j sin(theta_j - theta_i).
FrequencyVector frequency_from_configuration(const PhaseConfiguration& theta);

}  // namespace kuramoto
