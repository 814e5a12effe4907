#include "ces/onb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ces/subspaces.hpp"

namespace ces {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

std::string idx_label(int x, int y) { return std::to_string(x) + "," + std::to_string(y); }

// B restricted to level n of (nu, nu), ordered so that the first vector is the
// one carrying the level anchor: b_0^n for even n, a_{g-1,g} for odd n = 2g-1.
std::vector<BasisVector> parthasarathy_level(int nu, int n) {
  const Dims dims({nu, nu});
  auto rank = [&](int x, int y) { return static_cast<long>(x) * nu + y; };

  // Off-diagonal pairs (x, n-x), x < n-x, both coordinates below nu, by increasing x.
  std::vector<int> xs;
  for (int x = std::max(0, n - nu + 1); x < n - x; ++x) xs.push_back(x);
  const int pairs = static_cast<int>(xs.size());

  std::vector<BasisVector> antisym, sym;
  for (int x : xs) {
    Ket a = Ket::zero(dims);
    a[rank(x, n - x)] = 1.0 / std::numbers::sqrt2;
    a[rank(n - x, x)] = -1.0 / std::numbers::sqrt2;
    antisym.push_back({std::move(a), n, Role::Fill, -1, "a_{" + idx_label(x, n - x) + "}"});
  }

  if (n % 2 == 0) {
    const int h = n / 2;
    Ket b0 = Ket::zero(dims);
    const double norm = std::sqrt(2.0 * pairs * (2.0 * pairs + 1.0));
    for (int x : xs) {
      b0[rank(x, n - x)] = 1.0 / norm;
      b0[rank(n - x, x)] = 1.0 / norm;
    }
    b0[rank(h, h)] = -2.0 * pairs / norm;
    sym.push_back({std::move(b0), n, Role::Fill, -1, "b_0^" + std::to_string(n)});
  }
  for (int p = 1; p < pairs; ++p) {
    Ket b = Ket::zero(dims);
    const double norm = std::sqrt(2.0 * pairs);
    for (int m = 0; m < pairs; ++m) {
      const cplx w = unit_phase(static_cast<double>(m) * p / pairs) / norm;
      b[rank(xs[m], n - xs[m])] = w;
      b[rank(n - xs[m], xs[m])] = w;
    }
    sym.push_back({std::move(b), n, Role::Fill, -1, "b_" + std::to_string(p) + "^" + std::to_string(n)});
  }

  std::vector<BasisVector> out;
  if (n % 2 == 0) {
    out.push_back(std::move(sym.front()));
    for (auto& a : antisym) out.push_back(std::move(a));
    for (std::size_t i = 1; i < sym.size(); ++i) out.push_back(std::move(sym[i]));
  } else {
    out.push_back(std::move(antisym.back()));
    for (std::size_t i = 0; i + 1 < antisym.size(); ++i) out.push_back(std::move(antisym[i]));
    for (auto& b : sym) out.push_back(std::move(b));
  }
  return out;
}

// Anchors first in zeta order, then the rest by level in construction order.
GradedBasis assemble(Dims dims, std::optional<PairEmbedding> pair, std::vector<std::vector<BasisVector>> levels,
                     const std::vector<std::pair<int, int>>& anchors) {
  GradedBasis basis{std::move(dims), pair, {}};
  std::vector<std::vector<bool>> taken(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) taken[n].assign(levels[n].size(), false);
  for (std::size_t s = 0; s < anchors.size(); ++s) {
    auto [n, i] = anchors[s];
    BasisVector v = levels[n][i];
    v.role = Role::Anchor;
    v.anchor = static_cast<int>(s);
    basis.vectors.push_back(std::move(v));
    taken[n][i] = true;
  }
  for (std::size_t n = 0; n < levels.size(); ++n)
    for (std::size_t i = 0; i < levels[n].size(); ++i)
      if (!taken[n][i]) basis.vectors.push_back(std::move(levels[n][i]));
  return basis;
}

std::vector<Vec> fourier_block(int d, int first) {
  // Fourier vectors on y_first..y_{d-1} with frequencies 1..(d-first-1).
  std::vector<Vec> out;
  const int len = d - first;
  for (int f = 1; f < len; ++f) {
    Vec z = Vec::Zero(d);
    for (int s = first; s < d; ++s) z[s] = unit_phase(static_cast<double>(s - first) * f / len) / std::sqrt(len);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

PairEmbedding make_pair_embedding(const Dims& dims, int j, int jp) {
  dims.check_slot(j);
  dims.check_slot(jp);
  if (j == jp) throw Error("slot pair must consist of two distinct slots");
  return {j, jp, std::min(dims[j], dims[jp]), std::max(dims[j], dims[jp])};
}

long embedded_rank(const Dims& dims, const PairEmbedding& pair, int x, int xp) {
  return x * dims.stride(pair.j) + xp * dims.stride(pair.jp);
}

int GradedBasis::anchor_position(int s) const {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].role == Role::Anchor && vectors[i].anchor == s) return static_cast<int>(i);
  return -1;
}

GradedBasis parthasarathy_basis(int nu) {
  if (nu < 2) throw Error("parthasarathy basis: nu must be >= 2");
  const Dims dims({nu, nu});
  std::vector<std::vector<BasisVector>> levels(dims.N() + 1);
  for (int n = 1; n <= 2 * nu - 3; ++n) levels[n] = parthasarathy_level(nu, n);
  std::vector<std::pair<int, int>> anchors{{1, 0}};
  if (nu >= 3) anchors.emplace_back(2, 0);
  return assemble(dims, std::nullopt, std::move(levels), anchors);
}

std::vector<Vec> sum_zero_basis(int d) {
  if (d < 2) throw Error("sum-zero basis: d must be >= 2");
  std::vector<Vec> out;
  Vec z0 = Vec::Zero(d);
  z0[0] = 1.0 / std::numbers::sqrt2;
  z0[1] = -1.0 / std::numbers::sqrt2;
  out.push_back(std::move(z0));
  if (d == 2) return out;

  Vec z1 = Vec::Zero(d);
  const double norm = std::sqrt(2.0 * d * (d - 2));
  z1[0] = z1[1] = (d - 2) / norm;
  for (int s = 2; s < d; ++s) z1[s] = -2.0 / norm;
  out.push_back(std::move(z1));
  for (Vec& f : fourier_block(d, 2)) out.push_back(std::move(f));
  return out;
}

std::vector<Vec> complete_sum_zero_basis(int d, int r, std::span<const Vec> c1, bool require_single_anchor) {
  if (d < 3) throw Error("sum-zero completion: d must be >= 3");
  if (r < 1 || r > d - 2) throw Error("sum-zero completion: r must satisfy 1 <= r <= d-2");
  if (static_cast<int>(c1.size()) != r) throw Error("sum-zero completion: partial basis must have r vectors");
  constexpr double tol = 1e-10;
  for (std::size_t a = 0; a < c1.size(); ++a) {
    if (c1[a].size() != d) throw Error("sum-zero completion: partial basis vector has wrong length");
    if (c1[a].tail(d - r - 1).cwiseAbs().maxCoeff() > tol) {
      throw Error("sum-zero completion: partial basis leaves y_0..y_r");
    }
    if (std::abs(c1[a].sum()) > tol) throw Error("sum-zero completion: partial basis vector is not sum-zero");
    for (std::size_t b = 0; b < c1.size(); ++b) {
      const cplx ip = c1[a].dot(c1[b]);
      if (std::abs(ip - (a == b ? 1.0 : 0.0)) > tol) throw Error("sum-zero completion: partial basis not orthonormal");
    }
    if (require_single_anchor && ((a == 0) != (std::abs(c1[a][0]) > tol))) {
      throw Error("sum-zero completion: y_0 must occur in the first partial basis vector only");
    }
  }

  std::vector<Vec> out(c1.begin(), c1.end());
  Vec zr = Vec::Zero(d);
  const double norm = std::sqrt(static_cast<double>(d) * (r + 1) * (d - r - 1));
  for (int s = 0; s <= r; ++s) zr[s] = (d - 1 - r) / norm;
  for (int s = r + 1; s < d; ++s) zr[s] = -(r + 1) / norm;
  out.push_back(std::move(zr));
  for (Vec& f : fourier_block(d, r + 1)) out.push_back(std::move(f));
  return out;
}

Ket embed_pair(const Ket& bipartite, const Dims& dims, int j, int jp) {
  const PairEmbedding pair = make_pair_embedding(dims, j, jp);
  const Dims& src = bipartite.dims();
  if (src.k() != 2) throw Error("embed: source ket must be bipartite");
  Ket out = Ket::zero(dims);
  for (long r = 0; r < src.D(); ++r) {
    const cplx a = bipartite[r];
    if (a == 0.0) continue;
    const int x = src.digit(r, 0), xp = src.digit(r, 1);
    if (x >= pair.nu || xp >= pair.nu) throw Error("embed: source ket has support outside the nu x nu corner");
    out[embedded_rank(dims, pair, x, xp)] = a;
  }
  return out;
}

GradedBasis general_onb(const Dims& dims, int j, int jp) {
  const PairEmbedding pair = make_pair_embedding(dims, j, jp);
  const int nu = pair.nu;
  if (dims.k() == 2 && pair.nu == pair.nu_prime) {
    throw Error("general basis: equal-dims bipartite systems use the parthasarathy basis");
  }
  const auto sets = level_sets(dims);
  auto tilde = [&](int x, int xp) { return embedded_rank(dims, pair, x, xp); };

  std::vector<std::vector<BasisVector>> levels(dims.N() + 1);
  int zeta3_index = -1;

  for (int n = 1; n <= dims.N() - 1; ++n) {
    const std::vector<long>& level = sets[n];
    const int d = static_cast<int>(level.size());
    std::vector<long> order;  // y_s = order[s]
    std::vector<Vec> coeffs;  // in y-coordinates
    std::vector<std::string> labels;

    if (n <= 2 * nu - 3) {
      const int g = (n + 1) / 2;
      long i0, i1 = -1;
      if (n % 2 == 0) {
        i0 = tilde(n / 2, n / 2);
      } else {
        i0 = tilde(g - 1, g);
        i1 = tilde(g, g - 1);
      }
      std::vector<long> corner_set, rest;
      for (long rk : level) {
        bool in_corner = true;
        for (int t = 0; t < dims.k(); ++t) {
          const int dg = dims.digit(rk, t);
          if ((t == pair.j || t == pair.jp) ? dg > nu - 1 : dg != 0) in_corner = false;
        }
        (in_corner ? corner_set : rest).push_back(rk);
      }
      order.push_back(i0);
      if (i1 >= 0) order.push_back(i1);
      for (long rk : corner_set)
        if (rk != i0 && rk != i1) order.push_back(rk);
      const int r = static_cast<int>(corner_set.size()) - 1;
      order.insert(order.end(), rest.begin(), rest.end());

      std::vector<long> pos(dims.D(), -1);
      for (int s = 0; s < d; ++s) pos[order[s]] = s;
      std::vector<Vec> c1;
      for (BasisVector& b : parthasarathy_level(nu, n)) {
        const Ket e = embed_pair(b.ket, dims, pair.j, pair.jp);
        Vec y = Vec::Zero(d);
        for (long rk : corner_set) y[pos[rk]] = e[rk];
        c1.push_back(std::move(y));
        labels.push_back("~" + b.label);
      }
      if (rest.empty()) {
        coeffs = std::move(c1);
      } else {
        // The embedded B_n carries the odd-level anchor in every symmetric
        // vector once the level holds two or more pairs, so the single-anchor
        // precondition is only enforced where it holds.
        const bool single_anchor = n % 2 == 0 || r == 1;
        coeffs = complete_sum_zero_basis(d, r, c1, single_anchor);
        labels.push_back(n == 1 ? "c_0^1" : n == 2 ? "c_0^2" : "z_" + std::to_string(r) + "^" + std::to_string(n));
        for (std::size_t f = labels.size(); f < coeffs.size(); ++f)
          labels.push_back("f_" + std::to_string(f) + "^" + std::to_string(n));
        if (n == 2) zeta3_index = r;
      }
    } else {
      order = level;
      if (n == 2 * nu - 2) {
        const long i0 = tilde(nu - 1, nu - 1);
        order.erase(std::find(order.begin(), order.end(), i0));
        order.insert(order.begin(), i0);
      }
      coeffs = sum_zero_basis(d);
      labels.push_back(n == 2 ? "a_{2i0,2i1}" : "z_0^" + std::to_string(n));
      if (d >= 3) labels.push_back(n == 2 ? "c_0^2" : "z_1^" + std::to_string(n));
      for (std::size_t f = labels.size(); f < coeffs.size(); ++f)
        labels.push_back("f_" + std::to_string(f) + "^" + std::to_string(n));
      if (n == 2 && d >= 3) zeta3_index = 1;
    }

    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Ket v = Ket::zero(dims);
      for (int s = 0; s < d; ++s) v[order[s]] = coeffs[i][s];
      levels[n].push_back({std::move(v), n, Role::Fill, -1, labels[i]});
    }
  }

  std::vector<std::pair<int, int>> anchors{{1, 0}, {2, 0}};
  if (dims.k() >= 3) {
    anchors.emplace_back(1, 1);
    if (zeta3_index < 0) throw Error("general basis: level-2 completion vector missing");
    anchors.emplace_back(2, zeta3_index);
  }
  return assemble(dims, pair, std::move(levels), anchors);
}

GradedBasis build_basis(const Dims& dims, int j, int jp) {
  const PairEmbedding pair = make_pair_embedding(dims, j, jp);
  if (dims.k() == 2 && pair.nu == pair.nu_prime) return parthasarathy_basis(pair.nu);
  return general_onb(dims, j, jp);
}

// ---------------------------------------------------------------------------

std::string BasisCheck::first_failure(double tol) const {
  std::ostringstream os;
  if (count != expected_count) {
    os << "cardinality: " << count << " vectors, expected M = " << expected_count;
  } else if (orthonormality_error > tol) {
    os << "orthonormality: error " << orthonormality_error;
  } else if (t_residual > tol) {
    os << "orthogonality to T: residual " << t_residual;
  } else if (!graded) {
    os << "grading: a vector leaves its level";
  }
  return os.str();
}

BasisCheck check_basis(const GradedBasis& basis) {
  const Dims& dims = basis.dims;
  BasisCheck c;
  c.expected_count = dims.M();
  c.count = static_cast<long>(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a; b < basis.size(); ++b) {
      const cplx ip = basis.vectors[a].ket.inner(basis.vectors[b].ket);
      c.orthonormality_error = std::max(c.orthonormality_error, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  const auto t = build_T(dims);
  for (const BasisVector& v : basis.vectors) {
    for (const Ket& u : t) c.t_residual = std::max(c.t_residual, std::abs(u.inner(v.ket)));
    for (long r = 0; r < dims.D(); ++r)
      if (dims.level_of(r) != v.level && std::abs(v.ket[r]) > 1e-12) c.graded = false;
  }
  return c;
}

std::vector<int> vectors_containing(const GradedBasis& basis, long rank, double threshold) {
  std::vector<int> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (std::abs(basis.vectors[i].ket[rank]) > threshold) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<CensusLine> summand_census(const GradedBasis& basis, double threshold) {
  const Dims& dims = basis.dims;
  std::vector<CensusLine> lines;
  auto count = [&](long rank) { return static_cast<int>(vectors_containing(basis, rank, threshold).size()); };
  auto tname = [](int x, int y) { return "~(" + idx_label(x, y) + ")"; };

  if (!basis.pair) {
    const int nu = dims[0];
    auto rank = [&](int x, int y) { return static_cast<long>(x) * nu + y; };
    lines.push_back({"B:0", "|0,0>", 0, count(rank(0, 0))});
    for (int g = 1; g <= nu - 2; ++g) lines.push_back({"B:iii", "|" + idx_label(g, g) + ">", 1, count(rank(g, g))});
    lines.push_back({"B:iii", "|" + idx_label(nu - 1, nu - 1) + ">", 0, count(rank(nu - 1, nu - 1))});
    return lines;
  }

  const PairEmbedding& p = *basis.pair;
  const int nu = p.nu;
  auto tilde = [&](int x, int y) { return embedded_rank(dims, p, x, y); };

  lines.push_back({"i", tname(0, 0), 0, count(tilde(0, 0))});
  for (int g = 1; g <= nu - 2; ++g) lines.push_back({"ii", tname(g, g), 2, count(tilde(g, g))});
  const bool once = dims.k() == 2 && ((nu == 2 && nu < p.nu_prime) || p.nu_prime == nu + 1);
  lines.push_back({"iii", tname(nu - 1, nu - 1), once ? 1 : 2, count(tilde(nu - 1, nu - 1))});
  for (int g = 2; g <= nu - 1; ++g) {
    const auto lo = vectors_containing(basis, tilde(g - 1, g), threshold);
    const auto hi = vectors_containing(basis, tilde(g, g - 1), threshold);
    lines.push_back({"iv", tname(g - 1, g), 2, static_cast<int>(lo.size())});
    lines.push_back({"iv", tname(g, g - 1), 2, static_cast<int>(hi.size())});
    lines.push_back({"iv", tname(g - 1, g) + "=" + tname(g, g - 1) + " (same vectors)", 1, lo == hi ? 1 : 0});
  }
  return lines;
}

}  // namespace ces
