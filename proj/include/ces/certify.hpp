#pragma once

// NPT certification of operators supported on S.
//
// The witness vector xi = lambda |p0> + |q0> (p0 = 0...0, q0 with ones at
// slots j and j') turns <xi| rho^{PT_j} |xi> into the real quadratic
//   a lambda^2 + b lambda + c,  a = rho(p0,p0), b = rho(p1,q1) + rho(q1,p1), c = rho(q0,q0)
// with p1 = e_j and q1 = e_j'. A negative value certifies NPT_j without any
// eigenvalue computation; the minimum eigenvalue of rho^{PT_j} is reported
// alongside as an independent check.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ces/onb.hpp"
#include "ces/spectral.hpp"
#include "ces/tensor.hpp"

namespace ces {

struct WitnessSpec {
  int slot = 0;     // j, the transposed slot
  int partner = 1;  // j' (or j'' for the degenerate variant)
  bool degenerate = false;
  long p0 = 0, q0 = 0, p1 = 0, q1 = 0;  // ranks
};

WitnessSpec make_witness(const Dims& dims, int slot, int partner, bool degenerate = false);

struct Quadratic {
  double a = 0.0, b = 0.0, c = 0.0;
  double at(double lambda) const { return (a * lambda + b) * lambda + c; }
};

Quadratic witness_quadratic(const HermOp& rho, const WitnessSpec& spec);

Ket witness_vector(const Dims& dims, const WitnessSpec& spec, double lambda);

/// <xi| rho^{PT_j} |xi> evaluated through an explicit partial transpose.
double witness_value_direct(const HermOp& rho, const WitnessSpec& spec, double lambda);

/// lambda = -sign(b) max(k, (c + 1)/|b|); falls back to the vertex -b/(2a) when
/// a > 0 and the default does not go negative.
double choose_lambda(const Quadratic& q, int k);

enum class Verdict { NptCertified, PptWithinTolerance, Inconclusive };
std::string to_string(Verdict v);

struct CertOptions {
  double tol = 1e-8;
  bool compute_eigenvalues = true;
  /// |b| at or below this (relative to the weight scale) counts as the degenerate case.
  double degeneracy_tol = 1e-9;
  JacobiOptions jacobi{};
};

struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  int slot = 0;
  std::optional<WitnessSpec> witness;
  std::optional<Quadratic> quadratic;
  std::optional<double> lambda;
  std::optional<double> witness_value;
  std::optional<double> min_eigenvalue;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string note;
};

/// Sum of |zeta><zeta| over the basis.
HermOp projector(const GradedBasis& basis);

/// sum_s p_s |zeta_s><zeta_s| (unnormalized).
HermOp mixture(const GradedBasis& basis, std::span<const double> weights);

/// rho / tr(rho).
HermOp normalized(const HermOp& rho);

CertReport certify_npt_level(const HermOp& rho, int slot, const CertOptions& opts = {},
                             std::optional<WitnessSpec> witness = std::nullopt);

/// Certify NPT_j of sum_s p_s P_s for the anchored basis built around (j, j').
/// Rejects weights that are negative, of the wrong length, or violate
/// p_0 + (k-2) p_2 > 0. When k >= 3 and (k-2) p_2 = k p_0 the witness moves to
/// a third slot j''.
CertReport certify_weighted_mixture(const GradedBasis& basis, std::span<const double> weights, int j, int jp,
                             const CertOptions& opts = {});

/// ||P_T rho||_F / ||rho||_F, zero iff the range of rho lies in S.
double range_residual_S(const HermOp& rho);

/// R rho R for the index-reversal operator R. Rejects operators whose range leaves S.
HermOp conjugate_by_R(const HermOp& rho, double range_tol = 1e-9);

struct SeesawOptions {
  int restarts = 50;
  int iterations = 200;
  double tol = 1e-12;  // stop a restart once a full cycle gains less than this
  std::uint64_t seed = 0;
};

struct SeesawResult {
  double value = 0.0;
  std::vector<Vec> factors;
  int best_restart = -1;
  /// Largest decrease seen across single-slot updates (0 when monotone).
  double worst_step_drop = 0.0;
  long updates = 0;

  Ket state(const Dims& dims) const { return kron(dims, factors); }
};

/// Maximize <x_1...x_k| P |x_1...x_k> over unit product vectors by cyclic
/// per-slot top-eigenvector updates. Restart r draws its start from a
/// generator seeded with (seed, r).
SeesawResult seesaw_max_product_overlap(const HermOp& p, const SeesawOptions& opts = {});

}  // namespace ces
