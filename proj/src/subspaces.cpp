#include "ces/subspaces.hpp"

#include <cmath>
#include <numeric>

#include "ces/spectral.hpp"

namespace ces {

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::nearbyint(x) && std::abs(x) < 1e15; }

cplx ipow(cplx base, int e) {
  cplx out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

bool integer_amplitudes(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integer(v[i].real()) || !is_integer(v[i].imag())) return false;
  return true;
}

}  // namespace

Vec power_vector(int d, cplx lambda) {
  Vec v(d);
  cplx p = 1.0;
  for (int x = 0; x < d; ++x) {
    v[x] = p;
    p *= lambda;
  }
  return v;
}

Ket vandermonde_vector(const Dims& dims, cplx lambda) {
  std::vector<Vec> factors;
  factors.reserve(dims.k());
  for (int d : dims.extents()) factors.push_back(power_vector(d, lambda));
  return kron(dims, factors);
}

VandermondeFamily vandermonde_family(const Dims& dims, std::optional<std::vector<cplx>> lambdas) {
  VandermondeFamily fam;
  if (lambdas) {
    fam.lambdas = std::move(*lambdas);
  } else {
    for (int n = 0; n <= dims.N(); ++n) fam.lambdas.emplace_back(n);
  }
  if (static_cast<int>(fam.lambdas.size()) != dims.N() + 1) {
    throw Error("vandermonde family: need exactly N + 1 = " + std::to_string(dims.N() + 1) + " lambdas");
  }
  for (std::size_t a = 0; a < fam.lambdas.size(); ++a)
    for (std::size_t b = a + 1; b < fam.lambdas.size(); ++b)
      if (fam.lambdas[a] == fam.lambdas[b]) throw Error("vandermonde family: lambdas must be distinct");
  for (cplx l : fam.lambdas) fam.vectors.push_back(vandermonde_vector(dims, l));
  return fam;
}

Mat family_span(const VandermondeFamily& family) {
  if (family.vectors.empty()) return Mat();
  Mat cols(family.vectors.front().dims().D(), static_cast<Eigen::Index>(family.vectors.size()));
  for (std::size_t i = 0; i < family.vectors.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = family.vectors[i].amplitudes();
  return orthonormalize(cols, 1e-14);
}

Ket uniform_level_vector(const Dims& dims, int level) {
  if (level < 0 || level > dims.N()) {
    throw Error("level " + std::to_string(level) + " out of range 0.." + std::to_string(dims.N()));
  }
  Vec v = Vec::Zero(dims.D());
  for (long r = 0; r < dims.D(); ++r)
    if (dims.level_of(r) == level) v[r] = 1.0;
  return Ket(dims, std::move(v));
}

std::vector<Ket> build_T(const Dims& dims) {
  std::vector<Ket> out;
  for (int n = 0; n <= dims.N(); ++n) out.push_back(uniform_level_vector(dims, n).normalized());
  return out;
}

HermOp projector_T(const Dims& dims) {
  Mat p = Mat::Zero(dims.D(), dims.D());
  for (const Ket& t : build_T(dims)) p += t.amplitudes() * t.amplitudes().adjoint();
  return HermOp(dims, std::move(p));
}

Membership membership_in_S(const Ket& ket) {
  const Dims& dims = ket.dims();
  const Vec& a = ket.amplitudes();
  Membership out;
  if (integer_amplitudes(a)) {
    std::vector<long long> re(dims.N() + 1, 0), im(dims.N() + 1, 0);
    long long norm2 = 0;
    for (long r = 0; r < dims.D(); ++r) {
      const auto x = static_cast<long long>(a[r].real());
      const auto y = static_cast<long long>(a[r].imag());
      re[dims.level_of(r)] += x;
      im[dims.level_of(r)] += y;
      norm2 += x * x + y * y;
    }
    if (norm2 == 0) throw Error("membership: zero vector");
    long long num = 0;
    for (int n = 0; n <= dims.N(); ++n) num += re[n] * re[n] + im[n] * im[n];
    out.residual = static_cast<double>(num) / static_cast<double>(norm2);
    out.exact = true;
    return out;
  }
  const double norm2 = a.squaredNorm();
  if (norm2 == 0.0) throw Error("membership: zero vector");
  std::vector<cplx> sums(dims.N() + 1, 0.0);
  for (long r = 0; r < dims.D(); ++r) sums[dims.level_of(r)] += a[r];
  double num = 0.0;
  for (const cplx& s : sums) num += std::norm(s);
  out.residual = num / norm2;
  return out;
}

long GradedSubspace::dimension() const { return std::accumulate(level_dim.begin(), level_dim.end(), 0L); }

GradedSubspace graded_subspace(const Dims& dims) {
  GradedSubspace g{dims, level_sizes(dims), {}};
  g.level_dim.assign(g.level_size.size(), 0);
  for (int n = 1; n + 1 <= dims.N(); ++n) g.level_dim[n] = g.level_size[n] - 1;
  return g;
}

bool in_level_sum_zero(const Ket& ket, int level, double tol) {
  const Dims& dims = ket.dims();
  cplx sum = 0.0;
  for (long r = 0; r < dims.D(); ++r) {
    if (dims.level_of(r) == level) {
      sum += ket[r];
    } else if (std::abs(ket[r]) > tol) {
      return false;
    }
  }
  return std::abs(sum) <= tol;
}

std::vector<Ket> johnston_generators(int d1, int d2) {
  if (d1 < 2 || d2 < 2) throw Error("johnston generators: both dimensions must be >= 2");
  const Dims dims({d1, d2});
  std::vector<Ket> out;
  for (int x = 0; x + 2 <= d1; ++x) {
    for (int y = 0; y + 2 <= d2; ++y) {
      Ket w = Ket::zero(dims);
      const int a[2] = {x, y + 1};
      const int b[2] = {x + 1, y};
      w[dims.rank_of(a)] += 1.0;
      w[dims.rank_of(b)] -= 1.0;
      out.push_back(std::move(w));
    }
  }
  return out;
}

long integer_rank(std::vector<std::vector<long long>> rows) {
  // Bareiss elimination; every division below is exact.
  using wide = __int128;
  const std::size_t m = rows.size();
  if (m == 0) return 0;
  const std::size_t n = rows.front().size();
  std::vector<std::vector<wide>> a(m, std::vector<wide>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];

  long rank = 0;
  wide prev = 1;
  for (std::size_t col = 0; col < n && static_cast<std::size_t>(rank) < m; ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    const auto& prow = a[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) a[i][j] = (prow[col] * a[i][j] - a[i][col] * prow[j]) / prev;
      a[i][col] = 0;
    }
    prev = prow[col];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<long long>> integer_gram(const std::vector<Ket>& kets) {
  for (const Ket& k : kets) {
    const Vec& a = k.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!is_integer(a[i].real()) || a[i].imag() != 0.0) throw Error("integer gram: amplitudes must be real integers");
  }
  std::vector<std::vector<long long>> g(kets.size(), std::vector<long long>(kets.size(), 0));
  for (std::size_t s = 0; s < kets.size(); ++s) {
    for (std::size_t t = 0; t < kets.size(); ++t) {
      long long acc = 0;
      const Vec& x = kets[s].amplitudes();
      const Vec& y = kets[t].amplitudes();
      for (Eigen::Index i = 0; i < x.size(); ++i)
        acc += static_cast<long long>(x[i].real()) * static_cast<long long>(y[i].real());
      g[s][t] = acc;
    }
  }
  return g;
}

Ket product_vector_in_T(const Dims& dims, ExtendedComplex lambda) {
  if (lambda) return vandermonde_vector(dims, *lambda);
  std::vector<int> top(dims.extents().begin(), dims.extents().end());
  for (int& d : top) d -= 1;
  return Ket::basis(dims, dims.rank_of(top));
}

cplx z_inner_closed_form(const Dims& dims, ExtendedComplex lambda, ExtendedComplex mu) {
  cplx out = 1.0;
  for (int d : dims.extents()) {
    if (!lambda && !mu) continue;
    if (!lambda) {
      out *= ipow(*mu, d - 1);
    } else if (!mu) {
      out *= ipow(std::conj(*lambda), d - 1);
    } else {
      const cplx t = std::conj(*lambda) * *mu;
      cplx s = 0.0, p = 1.0;
      for (int x = 0; x < d; ++x) {
        s += p;
        p *= t;
      }
      out *= s;
    }
  }
  return out;
}

}  // namespace ces
