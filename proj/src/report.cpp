#include "ces/report.hpp"

#include <cmath>
#include <cstdio>

namespace ces {

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      bool flat = j.size() <= 8;
      for (const auto& e : j) flat = flat && e.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += pretty && flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json to_json(const Dims& dims) { return Json(std::vector<int>(dims.extents().begin(), dims.extents().end())); }

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

Json sparse_json(const Ket& ket, double threshold) {
  Json out = Json::array();
  for (long r = 0; r < ket.dims().D(); ++r) {
    if (std::abs(ket[r]) <= threshold) continue;
    out.push_back(Json{{"index", ket.dims().digits_of(r)}, {"amp", to_json(ket[r])}});
  }
  return out;
}

Json to_json(const WitnessSpec& w, const Dims& dims) {
  return Json{{"slot", w.slot + 1},
              {"partner", w.partner + 1},
              {"degenerate", w.degenerate},
              {"p0", dims.digits_of(w.p0)},
              {"q0", dims.digits_of(w.q0)},
              {"p1", dims.digits_of(w.p1)},
              {"q1", dims.digits_of(w.q1)}};
}

Json to_json(const CertReport& rep, const Dims& dims) {
  Json out{{"dims", to_json(dims)}, {"slot", rep.slot + 1}, {"verdict", to_string(rep.verdict)}};
  out["witness"] = rep.witness ? to_json(*rep.witness, dims) : Json();
  out["quadratic"] = rep.quadratic ? Json{{"a", rep.quadratic->a}, {"b", rep.quadratic->b}, {"c", rep.quadratic->c}} : Json();
  out["lambda"] = rep.lambda ? Json(*rep.lambda) : Json();
  out["witness_value"] = rep.witness_value ? Json(*rep.witness_value) : Json();
  out["min_eigenvalue"] = rep.min_eigenvalue ? Json(*rep.min_eigenvalue) : Json();
  out["tol"] = rep.tol;
  out["seed"] = rep.seed;
  out["note"] = rep.note;
  return out;
}

Json to_json(const BasisCheck& c) {
  return Json{{"expected_count", c.expected_count},
              {"count", c.count},
              {"orthonormality_error", c.orthonormality_error},
              {"t_residual", c.t_residual},
              {"graded", c.graded},
              {"ok", c.ok()}};
}

Json to_json(const CensusLine& l) {
  return Json{{"item", l.item}, {"index", l.index}, {"expected", l.expected}, {"observed", l.observed}, {"ok", l.ok()}};
}

Json to_json(const GradedBasis& basis, bool with_vectors) {
  Json out{{"dims", to_json(basis.dims)}};
  if (basis.pair) {
    out["route"] = "general";
    out["pair"] = {basis.pair->j + 1, basis.pair->jp + 1};
    out["nu"] = basis.pair->nu;
  } else {
    out["route"] = "equal-bipartite";
    out["pair"] = Json();
    out["nu"] = basis.dims[0];
  }
  out["size"] = basis.size();
  if (with_vectors) {
    Json vs = Json::array();
    for (const BasisVector& v : basis.vectors) {
      vs.push_back(Json{{"label", v.label},
                        {"level", v.level},
                        {"anchor", v.role == Role::Anchor ? Json(v.anchor) : Json()},
                        {"amplitudes", sparse_json(v.ket, 1e-15)}});
    }
    out["vectors"] = std::move(vs);
  }
  return out;
}

Json to_json(const SeesawResult& r) {
  Json fs = Json::array();
  for (const Vec& f : r.factors) fs.push_back(to_json(f));
  return Json{{"value", r.value},
              {"best_restart", r.best_restart},
              {"worst_step_drop", r.worst_step_drop},
              {"updates", r.updates},
              {"factors", std::move(fs)}};
}

Json to_json(const UpbValidation& v) {
  Json out{{"count", v.count}, {"D", v.D}, {"orthonormality_error", v.orthonormality_error}, {"span_full", v.span_full}};
  out["best_value"] = v.best_value ? Json(*v.best_value) : Json();
  out["best_state"] = v.best_state ? sparse_json(*v.best_state, 1e-12) : Json();
  out["threshold"] = v.threshold;
  out["unextendable"] = v.unextendable;
  return out;
}

Json to_json(const PptReport& rep) {
  Json cuts = Json::array();
  for (const CutResult& c : rep.cuts) {
    std::vector<int> one_based;
    for (int s : c.slots) one_based.push_back(s + 1);
    cuts.push_back(Json{{"cut", one_based}, {"min_eigenvalue", c.min_eigenvalue}});
  }
  return Json{{"cuts", std::move(cuts)}, {"min_eigenvalue", rep.min_eigenvalue}, {"tol", rep.tol}, {"ppt", rep.ppt}};
}

Json to_json(const UpbAnalysis& a) {
  Json out{{"validation", to_json(a.validation)}};
  if (a.state) {
    out["state"] = Json{{"trace", a.state->trace().real()}, {"rank", *a.state_rank}};
  } else {
    out["state"] = Json();
  }
  out["ppt"] = a.ppt ? to_json(*a.ppt) : Json();
  out["bound_entangled"] = a.bound_entangled;
  out["verdict"] = a.verdict;
  return out;
}

Json to_json(ExtendedComplex lambda) { return lambda ? to_json(*lambda) : Json("inf"); }

Json to_json(const FSearchReport& rep) {
  Json grid = Json::array();
  for (const auto& l : rep.grid) grid.push_back(to_json(l));
  Json fams = Json::array();
  for (std::size_t i = 0; i < rep.families.size(); ++i) {
    Json members = Json::array();
    for (int idx : rep.families[i]) members.push_back(to_json(rep.grid[static_cast<std::size_t>(idx)]));
    fams.push_back(Json{{"lambdas", std::move(members)}, {"validation", to_json(rep.validations[i])}});
  }
  return Json{{"grid", std::move(grid)},
              {"largest_size", rep.largest.size()},
              {"families", std::move(fams)},
              {"any_unextendable", rep.any_unextendable}};
}

}  // namespace ces
