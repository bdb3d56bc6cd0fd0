#pragma once

#include "mam/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mam {

/// Odd-length cyclic sequence n_1, ..., n_{2l+1} of positive integers.
struct CyclicWeights {
  std::vector<int> weights;
  int total() const;
  int ell() const { return static_cast<int>(weights.size() - 1) / 2; }
};

struct SpherePair {
  int p = 0;
  int q = 0;
  bool operator==(const SpherePair&) const = default;
  auto operator<=>(const SpherePair&) const = default;
};

struct DiffeoType {
  int n = 0;
  int s = 0;
  std::vector<int> d;                // d_j = n_j + ... + n_{j+l-1}, cyclic
  std::vector<SpherePair> summands;  // (2 d_j + s - 1, 2n - 2 d_j + s - 2)
  int manifold_dimension = 0;        // 2n + 2s - 3
  std::vector<std::string> warnings;
};

/// Connected sum of sphere products for the cyclic weights and s >= 1.
/// Throws StructuralError for even or short sequences, non-positive entries or s < 1.
DiffeoType classify(const CyclicWeights& w, int s);

/// "#5 (S^4 x S^5)"; distinct summands sorted by (p, q) and joined by " # ".
std::string describe(const DiffeoType& t);

/// Odd-polygon type of a planar configuration: the lambda_j are projected to
/// the unit circle and cut into classes by the antipodal points -lambda_i;
/// class sizes are listed counterclockwise starting with the class of lambda_1.
/// Throws StructuralError when m != 1, some lambda_j is zero, a lambda sits
/// within angle_tol of an antipode, or the class count is not odd and >= 3.
CyclicWeights normalize_configuration(const Configuration& cfg, double angle_tol = 1e-9);

enum class Equivalence { rotation, dihedral };
std::string to_string(Equivalence e);

/// Canonical representatives (lexicographically least rotation, or rotation
/// and reversal) of compositions of n into an odd number >= 3 of parts.
std::vector<std::vector<int>> enumerate_diffeo_types(int n, Equivalence eq = Equivalence::rotation);
std::int64_t count_diffeo_types(int n, Equivalence eq = Equivalence::rotation);

}  // namespace mam
