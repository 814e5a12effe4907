#pragma once

// Hermitian eigenvalues by cyclic complex Jacobi rotations, plus the small
// orthonormalization helpers the constructions need.

#include <vector>

#include "ces/tensor.hpp"

namespace ces {

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm falls below threshold * max(1, ||A||_F).
  double threshold = 1e-13;
  int max_sweeps = 100;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  Mat vectors;                 // column i pairs with values[i]
  int sweeps = 0;
  bool converged = false;
};

/// Full eigendecomposition of a Hermitian matrix. Throws when the input is not
/// Hermitian to kHermitianTol.
EigenSystem hermitian_eigensystem(const Mat& a, const JacobiOptions& opts = {});

std::vector<double> hermitian_eigenvalues(const HermOp& op, const JacobiOptions& opts = {});

double min_eigenvalue(const HermOp& op, const JacobiOptions& opts = {});

/// Orthonormal basis of span(columns) by modified Gram-Schmidt with one
/// reorthogonalization pass. Columns whose remaining norm drops below
/// drop_tol relative to their original norm are discarded.
Mat orthonormalize(const Mat& columns, double drop_tol = 1e-12);

/// ||v - Q Q^dagger v|| / ||v|| for Q with orthonormal columns.
double span_residual(const Vec& v, const Mat& q);

}  // namespace ces
