#pragma once

// Orthonormal bases of the completely entangled subspace S.
//
// Two routes:
//  * k = 2 with d_1 = d_2 = nu: the explicit antisymmetric / symmetric-Fourier
//    family B (parthasarathy_basis).
//  * everything else: for a chosen slot pair (j, j'), a level-by-level basis C
//    that embeds B_n for the nu x nu corner of slots j, j' and completes each
//    sum-zero level space around it (general_onb).
//
// Both put the anchor vectors first: zeta_0 (a_{0,1}), zeta_1 (level-2 anchor),
// and for k >= 3 also zeta_2 = c_0^1 and zeta_3 = c_0^2. Remaining vectors
// follow in increasing level.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ces/tensor.hpp"

namespace ces {

enum class Role { Anchor, Fill };

struct BasisVector {
  Ket ket;
  int level = 0;
  Role role = Role::Fill;
  int anchor = -1;  // s of zeta_s when role == Anchor
  std::string label;
};

/// Slots j, j' (0-based) carrying the embedded nu x nu corner.
struct PairEmbedding {
  int j = 0;
  int jp = 1;
  int nu = 0;        // min(d_j, d_j')
  int nu_prime = 0;  // max(d_j, d_j')
};

PairEmbedding make_pair_embedding(const Dims& dims, int j, int jp);

/// Rank of the multi-index with x at slot j, x' at slot j' and 0 elsewhere.
long embedded_rank(const Dims& dims, const PairEmbedding& pair, int x, int xp);

struct GradedBasis {
  Dims dims;
  std::optional<PairEmbedding> pair;  // empty on the equal-dims bipartite route
  std::vector<BasisVector> vectors;

  std::size_t size() const { return vectors.size(); }
  /// Position of zeta_s in `vectors`, or -1.
  int anchor_position(int s) const;
};

/// Basis B of S for dims (nu, nu).
GradedBasis parthasarathy_basis(int nu);

/// Orthonormal basis of the sum-zero subspace of C^d. For d = 2 this is
/// (y_0 - y_1)/sqrt2; for d >= 3 it is z_0 = (y_0 - y_1)/sqrt2,
/// z_1 = ((d-2)(y_0 + y_1) - 2 (y_2 + ... + y_{d-1})) / sqrt(2d(d-2)) and a
/// Fourier basis of the sum-zero vectors on y_2..y_{d-1}.
std::vector<Vec> sum_zero_basis(int d);

/// Completion of an orthonormal basis `c1` of the sum-zero vectors on y_0..y_r
/// to one of the whole sum-zero subspace of C^d: appends
/// z_r = ((d-1-r) eta - (r+1) v) / sqrt(d (r+1)(d-r-1)) with eta = y_0 + ... + y_r,
/// v = y_{r+1} + ... + y_{d-1}, followed by a Fourier basis of the sum-zero
/// vectors on y_{r+1}..y_{d-1}.
///
/// Requires 1 <= r <= d-2 and `c1` of size r, orthonormal, sum-zero, supported
/// on y_0..y_r. With `require_single_anchor` the first vector of `c1` must be
/// the only one in which y_0 occurs.
std::vector<Vec> complete_sum_zero_basis(int d, int r, std::span<const Vec> c1, bool require_single_anchor = true);

/// Basis C of S built around the slot pair (j, j'). Rejects j == j' and the
/// equal-dims bipartite case.
GradedBasis general_onb(const Dims& dims, int j, int jp);

/// parthasarathy_basis for equal-dims bipartite systems, general_onb otherwise.
GradedBasis build_basis(const Dims& dims, int j, int jp);

/// Transport a ket on (a, b) into `dims`, placing the first factor at slot j and
/// the second at slot j', with |0> on the remaining slots.
Ket embed_pair(const Ket& bipartite, const Dims& dims, int j, int jp);

struct BasisCheck {
  long expected_count = 0;
  long count = 0;
  double orthonormality_error = 0.0;  // max |<a|b> - delta_ab|
  double t_residual = 0.0;            // max |<u_n/|u_n| | v>|
  bool graded = true;                 // every vector supported on its labelled level
  bool ok(double tol = 1e-10) const {
    return count == expected_count && orthonormality_error <= tol && t_residual <= tol && graded;
  }
  std::string first_failure(double tol = 1e-10) const;
};

BasisCheck check_basis(const GradedBasis& basis);

/// One line of the summand census: how many basis vectors carry a nonzero
/// amplitude at a given index, against the expected count.
struct CensusLine {
  std::string item;
  std::string index;
  int expected = 0;
  int observed = 0;
  bool ok() const { return expected == observed; }
};

/// Summand counts: on the general route items (i)-(iv) of the embedded-corner
/// census (with (iv) comparing the exact sets of vectors), on the equal-dims
/// bipartite route the |g,g> rule of B. Amplitudes above `threshold` count.
std::vector<CensusLine> summand_census(const GradedBasis& basis, double threshold = 1e-12);

/// Positions of vectors with |amplitude| > threshold at `rank`.
std::vector<int> vectors_containing(const GradedBasis& basis, long rank, double threshold = 1e-12);

}  // namespace ces
