#include "ces/upb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ces/spectral.hpp"

namespace ces {

Ket ProductFamily::ket(std::size_t s) const { return kron(dims, members.at(s)); }

double ProductFamily::orthonormality_error() const {
  std::vector<Ket> kets;
  for (std::size_t s = 0; s < size(); ++s) kets.push_back(ket(s));
  double err = 0.0;
  for (std::size_t s = 0; s < kets.size(); ++s)
    for (std::size_t t = s; t < kets.size(); ++t)
      err = std::max(err, std::abs(kets[s].inner(kets[t]) - (s == t ? 1.0 : 0.0)));
  return err;
}

ProductFamily make_product_family(Dims dims, std::vector<std::vector<Vec>> members, std::string note) {
  if (members.empty()) throw Error("product family: no members");
  for (std::size_t s = 0; s < members.size(); ++s) {
    const auto& m = members[s];
    if (static_cast<int>(m.size()) != dims.k()) {
      throw Error("product family: member " + std::to_string(s) + " has " + std::to_string(m.size()) + " factors, expected " +
                  std::to_string(dims.k()));
    }
    for (int r = 0; r < dims.k(); ++r) {
      if (m[r].size() != dims[r]) {
        throw Error("product family: member " + std::to_string(s) + " slot " + std::to_string(r + 1) + " has length " +
                    std::to_string(m[r].size()) + ", expected " + std::to_string(dims[r]));
      }
    }
    const double n = kron(dims, m).norm();
    if (std::abs(n - 1.0) > kUnitTol) throw Error("product family: member " + std::to_string(s) + " is not a unit vector");
  }
  return ProductFamily{std::move(dims), std::move(members), std::move(note)};
}

namespace {

cplx parse_amplitude(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw Error("product family: amplitude must be a number or [re, im]");
}

}  // namespace

ProductFamily parse_product_family(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("product family: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("vectors")) {
    throw Error("product family: expected an object with \"dims\" and \"vectors\"");
  }
  std::vector<int> extents;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw Error("product family: dims must be integers");
    extents.push_back(d.get<int>());
  }
  Dims dims(std::move(extents));
  std::vector<std::vector<Vec>> members;
  for (const auto& member : doc["vectors"]) {
    if (!member.is_array()) throw Error("product family: each vector is a list of slot factors");
    std::vector<Vec> factors;
    for (const auto& factor : member) {
      if (!factor.is_array()) throw Error("product family: each slot factor is a list of amplitudes");
      Vec v(static_cast<Eigen::Index>(factor.size()));
      for (std::size_t i = 0; i < factor.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_amplitude(factor[i]);
      factors.push_back(std::move(v));
    }
    members.push_back(std::move(factors));
  }
  std::string note = doc.contains("note") && doc["note"].is_string() ? doc["note"].get<std::string>() : "";
  return make_product_family(std::move(dims), std::move(members), std::move(note));
}

ProductFamily load_product_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("product family: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_product_family(ss.str());
}

namespace {

void require_orthonormal(const ProductFamily& family, const char* who) {
  const double err = family.orthonormality_error();
  if (err > kUnitTol) {
    throw Error(std::string(who) + ": family is not orthonormal (error " + std::to_string(err) + ")");
  }
}

Mat complement_projector(const ProductFamily& family) {
  const long D = family.dims.D();
  Mat p = Mat::Identity(D, D);
  for (std::size_t s = 0; s < family.size(); ++s) {
    const Vec v = family.ket(s).amplitudes();
    p -= v * v.adjoint();
  }
  return 0.5 * (p + p.adjoint());
}

}  // namespace

UpbValidation validate_upb(const ProductFamily& family, const UpbOptions& opts) {
  require_orthonormal(family, "validate_upb");
  UpbValidation out;
  out.count = static_cast<long>(family.size());
  out.D = family.dims.D();
  out.orthonormality_error = family.orthonormality_error();
  out.threshold = opts.threshold;
  if (out.count >= out.D) {
    out.span_full = true;
    return out;
  }
  const SeesawResult best = seesaw_max_product_overlap(HermOp(family.dims, complement_projector(family)), opts.seesaw);
  out.best_value = best.value;
  out.best_state = best.state(family.dims);
  out.unextendable = best.value <= opts.threshold;
  return out;
}

HermOp bbd_state(const ProductFamily& family) {
  require_orthonormal(family, "bbd_state");
  const long D = family.dims.D();
  const long d = static_cast<long>(family.size());
  if (d >= D) throw Error("bbd_state: need fewer members than the total dimension");
  return HermOp(family.dims, complement_projector(family) / static_cast<double>(D - d));
}

std::vector<std::vector<int>> bipartite_cuts(const Dims& dims) {
  const int k = dims.k();
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    const int size = std::popcount(mask);
    const bool keep = 2 * size < k || (2 * size == k && (mask & 1u));
    if (!keep) continue;
    std::vector<int> cut;
    for (int r = 0; r < k; ++r)
      if (mask & (1u << r)) cut.push_back(r);
    out.push_back(std::move(cut));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

PptReport ppt_all_cuts(const HermOp& rho, double tol, const JacobiOptions& jacobi) {
  if (!rho.hermitian()) throw Error("ppt_all_cuts: operator is not Hermitian");
  PptReport rep;
  rep.tol = tol;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& cut : bipartite_cuts(rho.dims())) {
    const double m = min_eigenvalue(partial_transpose_cut(rho, cut), jacobi);
    rep.cuts.push_back({cut, m});
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, m);
  }
  rep.ppt = rep.min_eigenvalue >= -tol;
  return rep;
}

UpbAnalysis analyze_upb(const ProductFamily& family, const UpbOptions& opts, double ppt_tol) {
  UpbAnalysis out;
  out.validation = validate_upb(family, opts);
  if (out.validation.span_full) {
    out.verdict = "not a UPB candidate: the family spans the whole space";
    return out;
  }
  out.state = bbd_state(family);
  long rank = 0;
  for (double e : hermitian_eigenvalues(*out.state))
    if (e > 1e-8) ++rank;
  out.state_rank = rank;
  out.ppt = ppt_all_cuts(*out.state, ppt_tol);
  // The range projector of the state is I - P_B, so the validation seesaw doubles as its certificate.
  out.bound_entangled = out.validation.unextendable && out.ppt->ppt;
  if (out.bound_entangled) {
    out.verdict = "bound-entangled (numerical certificate)";
  } else if (!out.validation.unextendable) {
    out.verdict = "extendable: a product vector in the orthocomplement reaches overlap " +
                  std::to_string(*out.validation.best_value);
  } else {
    out.verdict = "unextendable but not PPT at every cut";
  }
  return out;
}

std::vector<ExtendedComplex> default_f_grid() {
  return {cplx(0, 0), cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1), std::nullopt};
}

namespace {

// Bron-Kerbosch with pivoting over an adjacency matrix.
void maximal_cliques(const std::vector<std::vector<bool>>& adj, std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                     std::vector<std::vector<int>>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (p.empty() && x.empty()) {
    std::vector<int> c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  int pivot = !p.empty() ? p.front() : x.front();
  std::size_t best = 0;
  for (const auto* set : {&p, &x}) {
    for (int u : *set) {
      std::size_t n = 0;
      for (int v : p) n += adj[u][v];
      if (n > best) best = n, pivot = u;
    }
  }
  const std::vector<int> candidates = [&] {
    std::vector<int> c;
    for (int v : p)
      if (!adj[pivot][v]) c.push_back(v);
    return c;
  }();
  for (int v : candidates) {
    std::vector<int> np, nx;
    for (int u : p)
      if (adj[v][u]) np.push_back(u);
    for (int u : x)
      if (adj[v][u]) nx.push_back(u);
    r.push_back(v);
    maximal_cliques(adj, r, np, nx, out, cap);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

std::vector<Vec> z_factors(const Dims& dims, ExtendedComplex lambda) {
  std::vector<Vec> f;
  for (int d : dims.extents()) {
    Vec v;
    if (lambda) {
      v = power_vector(d, *lambda);
    } else {
      v = Vec::Zero(d);
      v[d - 1] = 1.0;
    }
    f.push_back(v / v.norm());
  }
  return f;
}

}  // namespace

FSearchReport upb_search_in_F(const Dims& dims, const std::vector<ExtendedComplex>& grid, const UpbOptions& opts,
                              double orth_tol, std::size_t max_families) {
  FSearchReport rep;
  rep.grid = grid;
  const int n = static_cast<int>(grid.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (grid[a] == grid[b]) throw Error("upb_search_in_F: grid points must be distinct");

  std::vector<double> norms(n);
  for (int a = 0; a < n; ++a) norms[a] = std::sqrt(z_inner_closed_form(dims, grid[a], grid[a]).real());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) adj[a][b] = std::abs(z_inner_closed_form(dims, grid[a], grid[b])) / (norms[a] * norms[b]) <= orth_tol;

  std::vector<int> r, p(n);
  for (int a = 0; a < n; ++a) p[a] = a;
  maximal_cliques(adj, r, p, {}, rep.families, max_families);
  std::sort(rep.families.begin(), rep.families.end(),
            [](const auto& x, const auto& y) { return x.size() != y.size() ? x.size() > y.size() : x < y; });
  if (!rep.families.empty()) rep.largest = rep.families.front();

  for (const auto& fam : rep.families) {
    std::vector<std::vector<Vec>> members;
    for (int idx : fam) members.push_back(z_factors(dims, grid[idx]));
    const UpbValidation v = validate_upb(make_product_family(dims, std::move(members)), opts);
    rep.any_unextendable = rep.any_unextendable || v.unextendable;
    rep.validations.push_back(v);
  }
  return rep;
}

}  // namespace ces
