#include "ces/certify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ces/subspaces.hpp"

namespace ces {

WitnessSpec make_witness(const Dims& dims, int slot, int partner, bool degenerate) {
  dims.check_slot(slot);
  dims.check_slot(partner);
  if (slot == partner) throw Error("witness: slot and partner must differ");
  WitnessSpec w;
  w.slot = slot;
  w.partner = partner;
  w.degenerate = degenerate;
  w.p0 = 0;
  w.q0 = dims.stride(slot) + dims.stride(partner);
  w.p1 = dims.stride(slot);
  w.q1 = dims.stride(partner);
  return w;
}

Quadratic witness_quadratic(const HermOp& rho, const WitnessSpec& s) {
  const Mat& m = rho.entries();
  if (std::max({s.p0, s.q0, s.p1, s.q1}) >= rho.dims().D()) throw Error("witness: indices exceed operator size");
  return {m(s.p0, s.p0).real(), (m(s.p1, s.q1) + m(s.q1, s.p1)).real(), m(s.q0, s.q0).real()};
}

Ket witness_vector(const Dims& dims, const WitnessSpec& spec, double lambda) {
  Ket xi = Ket::zero(dims);
  xi[spec.p0] = lambda;
  xi[spec.q0] = 1.0;
  return xi;
}

double witness_value_direct(const HermOp& rho, const WitnessSpec& spec, double lambda) {
  const Ket xi = witness_vector(rho.dims(), spec, lambda);
  const HermOp pt = partial_transpose(rho, spec.slot);
  return xi.amplitudes().dot(pt.entries() * xi.amplitudes()).real();
}

double choose_lambda(const Quadratic& q, int k) {
  if (q.b == 0.0) return q.a < 0.0 ? static_cast<double>(k) : 0.0;
  const double sign = q.b > 0.0 ? 1.0 : -1.0;
  double lambda = -sign * std::max(static_cast<double>(k), (q.c + 1.0) / std::abs(q.b));
  if (q.at(lambda) >= 0.0 && q.a > 0.0) lambda = -q.b / (2.0 * q.a);
  return lambda;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NptCertified:
      return "NPT-certified";
    case Verdict::PptWithinTolerance:
      return "PPT-within-tolerance";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

HermOp projector(const GradedBasis& basis) {
  const BasisCheck check = check_basis(basis);
  if (!check.ok()) throw Error("projector: invalid basis (" + check.first_failure() + ")");
  Mat p = Mat::Zero(basis.dims.D(), basis.dims.D());
  for (const BasisVector& v : basis.vectors) p += v.ket.amplitudes() * v.ket.amplitudes().adjoint();
  return HermOp(basis.dims, std::move(p));
}

HermOp mixture(const GradedBasis& basis, std::span<const double> weights) {
  if (weights.size() != basis.size()) {
    throw Error("mixture: expected " + std::to_string(basis.size()) + " weights, got " + std::to_string(weights.size()));
  }
  bool any = false;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error("mixture: weights must be finite and non-negative");
    any = any || w > 0.0;
  }
  if (!any) throw Error("mixture: all weights are zero");
  Mat p = Mat::Zero(basis.dims.D(), basis.dims.D());
  for (std::size_t s = 0; s < basis.size(); ++s) {
    if (weights[s] == 0.0) continue;
    const Vec& z = basis.vectors[s].ket.amplitudes();
    p += weights[s] * (z * z.adjoint());
  }
  return HermOp(basis.dims, std::move(p));
}

HermOp normalized(const HermOp& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw Error("normalize: trace must be positive");
  return HermOp(rho.dims(), rho.entries() / tr);
}

CertReport certify_npt_level(const HermOp& rho, int slot, const CertOptions& opts, std::optional<WitnessSpec> witness) {
  const Dims& dims = rho.dims();
  dims.check_slot(slot);
  if (!rho.hermitian()) throw Error("certify: operator is not Hermitian");

  CertReport rep;
  rep.slot = slot;
  rep.tol = opts.tol;
  if (!witness) {
    const int partner = slot == 0 ? 1 : 0;
    witness = make_witness(dims, slot, partner);
  }
  if (witness->slot != slot) throw Error("certify: witness transposes a different slot");
  rep.witness = witness;
  const Quadratic q = witness_quadratic(rho, *witness);
  rep.quadratic = q;
  rep.lambda = choose_lambda(q, dims.k());
  rep.witness_value = q.at(*rep.lambda);

  if (opts.compute_eigenvalues) rep.min_eigenvalue = min_eigenvalue(partial_transpose(rho, slot), opts.jacobi);

  const bool witness_neg = *rep.witness_value < -opts.tol;
  const bool eig_neg = rep.min_eigenvalue && *rep.min_eigenvalue < -opts.tol;
  if (witness_neg || eig_neg) {
    rep.verdict = Verdict::NptCertified;
  } else if (rep.min_eigenvalue) {
    rep.verdict = Verdict::PptWithinTolerance;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

CertReport certify_weighted_mixture(const GradedBasis& basis, std::span<const double> weights, int j, int jp,
                             const CertOptions& opts) {
  const Dims& dims = basis.dims;
  const int k = dims.k();
  dims.check_slot(j);
  dims.check_slot(jp);
  if (j == jp) throw Error("weighted mixture: slots j and j' must differ");
  if (basis.pair) {
    const bool same = (basis.pair->j == j && basis.pair->jp == jp) || (basis.pair->j == jp && basis.pair->jp == j);
    if (!same) throw Error("weighted mixture: basis was built for a different slot pair");
  }
  if (weights.size() != basis.size()) {
    throw Error("weighted mixture: expected " + std::to_string(basis.size()) + " weights");
  }
  for (double w : weights)
    if (!(w >= 0.0)) throw Error("weighted mixture: weights must be non-negative");
  const double p0 = weights[0];
  const double p2 = k >= 3 ? weights[2] : 0.0;
  if (!(p0 + (k - 2) * p2 > 0.0)) {
    throw Error("weighted mixture: hypothesis p_0 + (k-2) p_2 > 0 fails");
  }

  const HermOp rho = mixture(basis, weights);
  WitnessSpec spec = make_witness(dims, j, jp);
  Quadratic q = witness_quadratic(rho, spec);

  double scale = 0.0;
  for (double w : weights) scale = std::max(scale, w);
  std::string note = k == 2 ? "w = -p_0" : "w = -p_0 + p_2 (k-2)/k";
  if (k >= 3 && std::abs(q.b) <= opts.degeneracy_tol * scale) {
    int third = 0;
    while (third == j || third == jp) ++third;
    spec = make_witness(dims, j, third, true);
    note = "degenerate (k-2) p_2 = k p_0: xi' over slot j''=" + std::to_string(third + 1) + ", w' = -(2/k) p_2";
  }

  CertReport rep = certify_npt_level(rho, j, opts, spec);
  rep.note = note;
  return rep;
}

double range_residual_S(const HermOp& rho) {
  const double n = rho.entries().norm();
  if (n == 0.0) return 0.0;
  return (projector_T(rho.dims()).entries() * rho.entries()).norm() / n;
}

HermOp conjugate_by_R(const HermOp& rho, double range_tol) {
  const double res = range_residual_S(rho);
  if (res > range_tol) throw Error("conjugate by R: operator range leaves S (residual " + std::to_string(res) + ")");
  const Dims& dims = rho.dims();
  Mat out(dims.D(), dims.D());
  for (long q = 0; q < dims.D(); ++q)
    for (long p = 0; p < dims.D(); ++p) out(reverse_rank(dims, p), reverse_rank(dims, q)) = rho(p, q);
  return HermOp(dims, std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

Vec random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

// Matrix of the quadratic form in slot `slot` with all other factors fixed.
Mat contracted(const Mat& p, const Dims& dims, const std::vector<Vec>& factors, int slot) {
  const int d = dims[slot];
  Mat w = Mat::Zero(dims.D(), d);
  for (long r = 0; r < dims.D(); ++r) {
    cplx a = 1.0;
    for (int t = 0; t < dims.k(); ++t)
      if (t != slot) a *= factors[t][dims.digit(r, t)];
    w(r, dims.digit(r, slot)) = a;
  }
  Mat m = w.adjoint() * p * w;
  return 0.5 * (m + m.adjoint());
}

double objective(const Mat& p, const Dims& dims, const std::vector<Vec>& factors) {
  const Vec x = kron(dims, factors).amplitudes();
  return x.dot(p * x).real();
}

}  // namespace

SeesawResult seesaw_max_product_overlap(const HermOp& op, const SeesawOptions& opts) {
  if (!op.hermitian()) throw Error("seesaw: operator is not Hermitian");
  if (opts.restarts < 1 || opts.iterations < 1) throw Error("seesaw: restarts and iterations must be positive");
  const Dims& dims = op.dims();
  const Mat& p = op.entries();

  SeesawResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::vector<Vec> x;
    for (int t = 0; t < dims.k(); ++t) x.push_back(random_unit(dims[t], rng));

    double value = objective(p, dims, x);
    for (int it = 0; it < opts.iterations; ++it) {
      const double cycle_start = value;
      for (int t = 0; t < dims.k(); ++t) {
        const EigenSystem es = hermitian_eigensystem(contracted(p, dims, x, t));
        x[t] = es.vectors.col(es.vectors.cols() - 1);
        const double next = es.values.back();
        best.worst_step_drop = std::max(best.worst_step_drop, value - next);
        value = next;
        ++best.updates;
      }
      if (value - cycle_start < opts.tol) break;
    }
    if (value > best.value) {
      best.value = value;
      best.factors = x;
      best.best_restart = restart;
    }
  }
  return best;
}

}  // namespace ces
