#pragma once

// Completely entangled subspace S and its complement T = span{u_n}.
//
// T is spanned either by the Vandermonde product vectors v_lambda for N + 1
// distinct lambdas, or by the uniform level vectors u_n. S = T^perp is kept
// implicit: a vector lies in S iff on every level its coefficients sum to 0.

#include <optional>
#include <vector>

#include "ces/tensor.hpp"

namespace ces {

/// A point of C u {infinity}; std::nullopt stands for infinity.
using ExtendedComplex = std::optional<cplx>;

/// Per-slot (1, lambda, ..., lambda^{d-1}).
Vec power_vector(int d, cplx lambda);

/// v_lambda = kron over slots of power_vector(d_r, lambda).
Ket vandermonde_vector(const Dims& dims, cplx lambda);

struct VandermondeFamily {
  std::vector<cplx> lambdas;
  std::vector<Ket> vectors;
};

/// N + 1 Vandermonde vectors. Without explicit lambdas the grid 0, 1, ..., N is used.
VandermondeFamily vandermonde_family(const Dims& dims, std::optional<std::vector<cplx>> lambdas = std::nullopt);

/// Orthonormal basis of span(family) (columns).
Mat family_span(const VandermondeFamily& family);

/// u_n = sum of e_i over I_n.
Ket uniform_level_vector(const Dims& dims, int level);

/// The N + 1 normalized u_n, an orthonormal basis of T.
std::vector<Ket> build_T(const Dims& dims);

/// Orthogonal projector onto T, sum_n |u_n><u_n| / |I_n|.
HermOp projector_T(const Dims& dims);

struct Membership {
  /// sum_n |<u_n|ket>|^2 / ||ket||^2; zero iff ket lies in S.
  double residual = 0.0;
  /// True when all amplitudes were integers and the level sums were formed exactly.
  bool exact = false;
};

Membership membership_in_S(const Ket& ket);

/// Per-level description of S^(n) inside H^(n).
struct GradedSubspace {
  Dims dims;
  std::vector<long> level_size;  // |I_n|
  std::vector<long> level_dim;   // dim S^(n) = |I_n| - 1 for 1 <= n <= N-1, else 0

  long dimension() const;
};

GradedSubspace graded_subspace(const Dims& dims);

/// True when `ket` is supported on I_level and its coefficients sum to zero there (to tol).
bool in_level_sum_zero(const Ket& ket, int level, double tol = 1e-12);

/// w_{x,y} = |x>|y+1> - |x+1>|y> for 0 <= x <= d1-2, 0 <= y <= d2-2, ordered by (x, y).
std::vector<Ket> johnston_generators(int d1, int d2);

/// Rank of an integer matrix by fraction-free elimination.
long integer_rank(std::vector<std::vector<long long>> rows);

/// Exact Gram matrix of integer-valued kets. Throws if an amplitude is not an integer.
std::vector<std::vector<long long>> integer_gram(const std::vector<Ket>& kets);

/// z^lambda (equal to v_lambda) or, at infinity, the product of the top basis vectors.
Ket product_vector_in_T(const Dims& dims, ExtendedComplex lambda);

/// <z^lambda|z^mu> in closed form prod_r sum_x (conj(lambda) mu)^x, with the infinity cases.
cplx z_inner_closed_form(const Dims& dims, ExtendedComplex lambda, ExtendedComplex mu);

}  // namespace ces
