#include "ces/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ces {

namespace {

double off_diagonal_norm2(const Mat& a) {
  double s = 0.0;
  for (Eigen::Index q = 0; q < a.cols(); ++q)
    for (Eigen::Index p = 0; p < a.rows(); ++p)
      if (p != q) s += std::norm(a(p, q));
  return s;
}

// One complex Jacobi rotation annihilating a(p, q). The rotation is
// V = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on columns p, q, where
// a(p, q) = |a(p, q)| e^{i phi}.
void rotate(Mat& a, Mat& v, Eigen::Index p, Eigen::Index q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx vpp = c;
  const cplx vpq = s;
  const cplx vqp = -s * std::conj(phase);
  const cplx vqq = c * std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx aip = a(i, p), aiq = a(i, q);
    a(i, p) = aip * vpp + aiq * vqp;
    a(i, q) = aip * vpq + aiq * vqq;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx apj = a(p, j), aqj = a(q, j);
    a(p, j) = std::conj(vpp) * apj + std::conj(vqp) * aqj;
    a(q, j) = std::conj(vpq) * apj + std::conj(vqq) * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx vip = v(i, p), viq = v(i, q);
    v(i, p) = vip * vpp + viq * vqp;
    v(i, q) = vip * vpq + viq * vqq;
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const Mat& input, const JacobiOptions& opts) {
  if (input.rows() != input.cols()) throw Error("eigensolver: matrix is not square");
  const Eigen::Index n = input.rows();
  if (n > 0 && (input - input.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw Error("eigensolver: input is not Hermitian");
  }

  Mat a = 0.5 * (input + input.adjoint());
  Mat v = Mat::Identity(n, n);
  EigenSystem out;

  const double scale = std::max(1.0, a.norm());
  const double stop2 = std::pow(opts.threshold * scale, 2);
  const double skip = std::numeric_limits<double>::min();

  for (out.sweeps = 0; out.sweeps < opts.max_sweeps; ++out.sweeps) {
    if (off_diagonal_norm2(a) <= stop2) {
      out.converged = true;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
  }
  if (!out.converged) out.converged = off_diagonal_norm2(a) <= stop2;

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermOp& op, const JacobiOptions& opts) {
  if (!op.hermitian()) throw Error("eigenvalues: operator is not Hermitian");
  return hermitian_eigensystem(op.entries(), opts).values;
}

double min_eigenvalue(const HermOp& op, const JacobiOptions& opts) {
  auto vals = hermitian_eigenvalues(op, opts);
  return vals.empty() ? 0.0 : vals.front();
}

Mat orthonormalize(const Mat& columns, double drop_tol) {
  std::vector<Vec> kept;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Vec x = columns.col(c);
    const double original = x.norm();
    if (original == 0.0) continue;
    x /= original;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : kept) x -= q * q.dot(x);
    const double rest = x.norm();
    if (rest > drop_tol) kept.push_back(x / rest);
  }
  Mat q(columns.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) q.col(static_cast<Eigen::Index>(i)) = kept[i];
  return q;
}

double span_residual(const Vec& v, const Mat& q) {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  Vec r = v - q * (q.adjoint() * v);
  r -= q * (q.adjoint() * r);
  return r.norm() / n;
}

}  // namespace ces
