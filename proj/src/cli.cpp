#include "ces/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "ces/certify.hpp"
#include "ces/onb.hpp"
#include "ces/report.hpp"
#include "ces/subspaces.hpp"
#include "ces/upb.hpp"

namespace ces {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> dims_raw;
  std::vector<Dims> dims;
  std::string pair = "1,2";
  bool all_levels = false;
  std::string weights = "uniform";
  std::optional<std::uint64_t> seed_flag;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int restarts = 50;
  int iterations = 200;
  double seesaw_tol = 1e-12;
  double threshold = 1.0 - 1e-3;
  std::string format = "json";
  std::string out_path;
  bool no_assert = false;
  bool conjugate_R = false;
  bool timing = false;
  bool vectors = true;
  std::string fixture;
  bool search_F = false;
  std::string grid;
  std::string target = "S";
  int ppt_search = 0;
};

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + s + "' is not a comma-separated integer list");
    }
    if (used != tok.size()) throw UsageError(what + ": '" + s + "' is not a comma-separated integer list");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::vector<Dims> parse_dims(const std::vector<std::string>& raw) {
  std::vector<Dims> out;
  for (const auto& r : raw) {
    try {
      out.emplace_back(parse_int_list(r, "--dims"));
    } catch (const Error& e) {
      throw UsageError(std::string("--dims ") + r + ": " + e.what());
    }
  }
  return out;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed_flag) return *cfg.seed_flag;
  if (const char* env = std::getenv("CES_KIT_SEED")) {
    const std::string s(env);
    std::size_t used = 0;
    try {
      const unsigned long long v = std::stoull(s, &used);
      if (used == s.size() && !s.empty() && s[0] != '-') return v;
    } catch (const std::exception&) {
    }
    throw UsageError("CES_KIT_SEED='" + s + "' is not an unsigned integer");
  }
  return 0;
}

// Slot pairs (0-based) to run for one system.
std::vector<std::pair<int, int>> requested_pairs(const RunConfig& cfg, const Dims& dims, bool certify) {
  std::vector<std::pair<int, int>> out;
  const bool all = cfg.all_levels || cfg.pair == "all";
  if (all) {
    for (int j = 0; j < dims.k(); ++j) {
      if (certify) {
        out.emplace_back(j, j == 0 ? 1 : 0);
      } else {
        for (int jp = 0; jp < dims.k(); ++jp)
          if (jp != j) out.emplace_back(j, jp);
      }
    }
    return out;
  }
  const std::vector<int> p = parse_int_list(cfg.pair, "--pair");
  if (p.size() != 2) throw UsageError("--pair expects two slots j,j' or 'all'");
  const int j = p[0] - 1, jp = p[1] - 1;
  if (j < 0 || jp < 0 || j >= dims.k() || jp >= dims.k() || j == jp) {
    throw UsageError("--pair " + cfg.pair + ": slots must be distinct and within 1.." + std::to_string(dims.k()) +
                     " for dims " + dims.to_string());
  }
  out.emplace_back(j, jp);
  return out;
}

std::vector<double> read_weight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--weights: cannot open '" + path + "' (expected uniform, random, degenerate or a file)");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::vector<double> w;
  try {
    const Json doc = Json::parse(text);
    if (!doc.is_array()) throw UsageError("--weights " + path + ": expected a JSON array of numbers");
    for (const auto& x : doc) w.push_back(x.get<double>());
    return w;
  } catch (const Json::exception&) {
  }
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::stringstream in2(cleaned);
  std::string tok;
  while (in2 >> tok) {
    try {
      std::size_t used = 0;
      w.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--weights " + path + ": '" + tok + "' is not a number");
    }
  }
  return w;
}

std::mt19937_64 job_rng(std::uint64_t seed, std::uint64_t job) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(job),
                    static_cast<std::uint32_t>(job >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> make_weights(const RunConfig& cfg, const Dims& dims, std::size_t count, std::uint64_t job) {
  if (cfg.weights == "uniform") return std::vector<double>(count, 1.0);
  if (cfg.weights == "random" || cfg.weights == "degenerate") {
    auto rng = job_rng(cfg.seed, job);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(count);
    for (double& x : w) x = u(rng);
    if (cfg.weights == "degenerate") {
      const int k = dims.k();
      if (k < 3) throw UsageError("--weights degenerate needs at least three slots (got " + dims.to_string() + ")");
      w[2] = k * w[0] / (k - 2);
    }
    return w;
  }
  std::vector<double> w = read_weight_file(cfg.weights);
  if (w.size() != count) {
    throw UsageError("--weights " + cfg.weights + ": " + std::to_string(w.size()) + " weights given, dims " + dims.to_string() +
                     " need M = " + std::to_string(count));
  }
  return w;
}

ExtendedComplex parse_grid_point(const std::string& tok) {
  if (tok == "inf" || tok == "oo") return std::nullopt;
  static const std::regex real(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
  static const std::regex imag(R"(^([+-]?(\d+\.?\d*|\.\d+)?)i$)");
  static const std::regex both(R"(^([+-]?(\d+\.?\d*|\.\d+))([+-](\d+\.?\d*|\.\d+)?)i$)");
  std::smatch m;
  const auto coef = [](std::string s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (std::regex_match(tok, real)) return cplx(std::stod(tok), 0.0);
  if (std::regex_match(tok, m, imag)) return cplx(0.0, coef(m[1].str()));
  if (std::regex_match(tok, m, both)) return cplx(std::stod(m[1].str()), coef(m[3].str()));
  throw UsageError("--grid: cannot read '" + tok + "' (use numbers, i, -i, a+bi or inf)");
}

std::vector<ExtendedComplex> parse_grid(const std::string& s) {
  if (s.empty()) return default_f_grid();
  std::vector<ExtendedComplex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_grid_point(tok));
  return out;
}

std::string csv_double(double x) {
  const std::string s = format_double(x);
  return s.front() == '"' ? s.substr(1, s.size() - 2) : s;
}

std::string dims_csv(const Dims& d) {
  std::string s;
  for (int r = 0; r < d.k(); ++r) s += (r ? "x" : "") + std::to_string(d[r]);
  return s;
}

struct Outcome {
  Json results = Json::array();
  std::string csv;
  bool passed = true;
};

SeesawOptions seesaw_options(const RunConfig& cfg) {
  SeesawOptions o;
  o.restarts = cfg.restarts;
  o.iterations = cfg.iterations;
  o.tol = cfg.seesaw_tol;
  o.seed = cfg.seed;
  return o;
}

Outcome cmd_dims(const RunConfig& cfg) {
  Outcome o;
  o.csv = "dims,n,size\n";
  for (const Dims& d : cfg.dims) {
    const std::vector<long> sizes = level_sizes(d);
    long sum = 0;
    for (int n = 1; n + 1 <= d.N(); ++n) sum += sizes[static_cast<std::size_t>(n)] - 1;
    const bool ok = sum == d.M();
    o.passed = o.passed && ok;
    o.results.push_back(Json{{"dims", to_json(d)},
                             {"k", d.k()},
                             {"N", d.N()},
                             {"D", d.D()},
                             {"M", d.M()},
                             {"level_sizes", sizes},
                             {"sum_level_dims", sum},
                             {"ok", ok}});
    for (std::size_t n = 0; n < sizes.size(); ++n) o.csv += dims_csv(d) + "," + std::to_string(n) + "," + std::to_string(sizes[n]) + "\n";
  }
  return o;
}

Outcome cmd_basis(const RunConfig& cfg) {
  Outcome o;
  o.csv = "dims,j,jp,route,count,expected,orthonormality_error,t_residual,census_ok,ok\n";
  for (const Dims& d : cfg.dims) {
    const bool equal_bipartite = d.k() == 2 && d[0] == d[1];
    std::vector<std::pair<int, int>> pairs =
        equal_bipartite ? std::vector<std::pair<int, int>>{{0, 1}} : requested_pairs(cfg, d, false);
    for (auto [j, jp] : pairs) {
      const GradedBasis basis = build_basis(d, j, jp);
      const BasisCheck check = check_basis(basis);
      Json census = Json::array();
      bool census_ok = true;
      for (const CensusLine& l : summand_census(basis)) {
        census.push_back(to_json(l));
        census_ok = census_ok && l.ok();
      }
      const bool ok = check.ok() && census_ok;
      o.passed = o.passed && ok;
      Json r = to_json(basis, cfg.vectors);
      r["check"] = to_json(check);
      r["census"] = std::move(census);
      r["ok"] = ok;
      r["failed"] = check.ok() ? (census_ok ? "" : "summand census") : check.first_failure();
      o.results.push_back(std::move(r));
      o.csv += dims_csv(d) + "," + (basis.pair ? std::to_string(j + 1) + "," + std::to_string(jp + 1) : std::string(",")) + "," +
               (basis.pair ? "general" : "equal-bipartite") + "," + std::to_string(check.count) + "," +
               std::to_string(check.expected_count) + "," + csv_double(check.orthonormality_error) + "," +
               csv_double(check.t_residual) + "," + (census_ok ? "true" : "false") + "," + (ok ? "true" : "false") + "\n";
    }
  }
  return o;
}

std::string cert_csv_row(const Dims& d, const std::string& op, const CertReport& r) {
  const auto opt = [](const std::optional<double>& x) { return x ? csv_double(*x) : std::string(); };
  return dims_csv(d) + "," + op + "," + std::to_string(r.slot + 1) + "," + to_string(r.verdict) + "," +
         (r.quadratic ? csv_double(r.quadratic->a) + "," + csv_double(r.quadratic->b) + "," + csv_double(r.quadratic->c)
                      : std::string(",,")) +
         "," + opt(r.lambda) + "," + opt(r.witness_value) + "," + opt(r.min_eigenvalue) + "\n";
}

Outcome cmd_ppt_search(const RunConfig& cfg) {
  // Survey only: records the largest min PT eigenvalue met, without any claim.
  Outcome o;
  o.csv = "dims,trials,best_min_pt_eigenvalue\n";
  std::uint64_t job = 0;
  for (const Dims& d : cfg.dims) {
    const auto [j, jp] = requested_pairs(cfg, d, true).front();
    const GradedBasis basis = build_basis(d, j, jp);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_w;
    for (int t = 0; t < cfg.ppt_search; ++t) {
      auto rng = job_rng(cfg.seed, job++);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> w(basis.size());
      for (double& x : w) x = u(rng);
      const HermOp rho = normalized(mixture(basis, w));
      double worst = std::numeric_limits<double>::infinity();
      for (int s = 0; s < d.k(); ++s) worst = std::min(worst, min_eigenvalue(partial_transpose(rho, s)));
      if (worst > best) best = worst, best_w = w;
    }
    o.results.push_back(Json{{"dims", to_json(d)},
                             {"trials", cfg.ppt_search},
                             {"best_min_pt_eigenvalue", best},
                             {"best_weights", best_w},
                             {"note", "survey of random mixtures; no claim either way"}});
    o.csv += dims_csv(d) + "," + std::to_string(cfg.ppt_search) + "," + csv_double(best) + "\n";
  }
  return o;
}

Outcome cmd_certify(const RunConfig& cfg) {
  if (cfg.ppt_search > 0) return cmd_ppt_search(cfg);
  Outcome o;
  o.csv = "dims,operator,slot,verdict,a,b,c,lambda,witness_value,min_eigenvalue\n";
  CertOptions opts;
  opts.tol = cfg.tol;
  std::uint64_t job = 0;
  for (const Dims& d : cfg.dims) {
    for (auto [j, jp] : requested_pairs(cfg, d, true)) {
      const GradedBasis basis = build_basis(d, j, jp);
      const std::vector<double> w = make_weights(cfg, d, basis.size(), job++);
      CertReport rep;
      try {
        rep = certify_weighted_mixture(basis, w, j, jp, opts);
      } catch (const Error& e) {
        throw UsageError(std::string(e.what()) + " (dims " + d.to_string() + ", slot " + std::to_string(j + 1) + ")");
      }
      rep.seed = cfg.seed;
      const std::string op = cfg.weights == "uniform" ? "P_S" : "mixture";
      Json r = to_json(rep, d);
      r["operator"] = op;
      r["pair"] = {j + 1, jp + 1};
      r["weights"] = w;
      o.passed = o.passed && rep.verdict == Verdict::NptCertified;
      o.csv += cert_csv_row(d, op, rep);
      o.results.push_back(std::move(r));

      if (cfg.conjugate_R) {
        CertReport rr = certify_npt_level(conjugate_by_R(mixture(basis, w)), j, opts);
        rr.seed = cfg.seed;
        rr.note = "R rho R with R the index reversal";
        Json rj = to_json(rr, d);
        rj["operator"] = "R " + op + " R";
        rj["pair"] = {j + 1, jp + 1};
        o.passed = o.passed && rr.verdict == Verdict::NptCertified;
        o.csv += cert_csv_row(d, "R " + op + " R", rr);
        o.results.push_back(std::move(rj));
      }
    }
  }
  return o;
}

Outcome cmd_seesaw(const RunConfig& cfg) {
  if (cfg.target != "S" && cfg.target != "T") throw UsageError("--target must be S or T");
  Outcome o;
  o.csv = "dims,target,value,best_restart,worst_step_drop\n";
  for (const Dims& d : cfg.dims) {
    const HermOp pt = projector_T(d);
    const HermOp p = cfg.target == "T" ? pt : HermOp(d, Mat::Identity(d.D(), d.D()) - pt.entries());
    const SeesawResult res = seesaw_max_product_overlap(p, seesaw_options(cfg));
    Json r = to_json(res);
    r["dims"] = to_json(d);
    r["target"] = cfg.target;
    // Product vectors exist in T; a value well below one on S is the complete-entanglement certificate.
    r["completely_entangled"] = cfg.target == "S" ? Json(res.value <= 1.0 - 1e-4) : Json();
    if (cfg.target == "S") o.passed = o.passed && res.value <= 1.0 - 1e-4;
    o.results.push_back(std::move(r));
    o.csv += dims_csv(d) + "," + cfg.target + "," + csv_double(res.value) + "," + std::to_string(res.best_restart) + "," +
             csv_double(res.worst_step_drop) + "\n";
  }
  return o;
}

Outcome cmd_upb(const RunConfig& cfg) {
  UpbOptions opts;
  opts.threshold = cfg.threshold;
  opts.seesaw = seesaw_options(cfg);
  Outcome o;
  if (cfg.search_F) {
    if (cfg.dims.empty()) throw UsageError("upb --search-F needs --dims");
    const std::vector<ExtendedComplex> grid = parse_grid(cfg.grid);
    o.csv = "dims,families,largest_size,any_unextendable\n";
    for (const Dims& d : cfg.dims) {
      FSearchReport rep;
      try {
        rep = upb_search_in_F(d, grid, opts);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      Json r = to_json(rep);
      r["dims"] = to_json(d);
      o.passed = o.passed && !rep.any_unextendable;
      o.results.push_back(std::move(r));
      o.csv += dims_csv(d) + "," + std::to_string(rep.families.size()) + "," + std::to_string(rep.largest.size()) + "," +
               (rep.any_unextendable ? "true" : "false") + "\n";
    }
    return o;
  }
  if (cfg.fixture.empty()) throw UsageError("upb needs --fixture PATH or --search-F");
  ProductFamily family = [&] {
    try {
      return load_product_family(cfg.fixture);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  UpbAnalysis a;
  try {
    a = analyze_upb(family, opts, cfg.tol);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  Json r = to_json(a);
  r["dims"] = to_json(family.dims);
  r["fixture"] = cfg.fixture;
  r["fixture_note"] = family.note;
  o.passed = a.bound_entangled;
  o.csv = "cut,min_eigenvalue\n";
  if (a.ppt) {
    for (const CutResult& c : a.ppt->cuts) {
      std::string cut;
      for (int s : c.slots) cut += (cut.empty() ? "" : " ") + std::to_string(s + 1);
      o.csv += cut + "," + csv_double(c.min_eigenvalue) + "\n";
    }
  }
  o.results.push_back(std::move(r));
  return o;
}

Json config_json(const RunConfig& cfg) {
  Json dims = Json::array();
  for (const Dims& d : cfg.dims) dims.push_back(to_json(d));
  Json c{{"command", cfg.command}, {"dims", std::move(dims)}};
  if (cfg.command == "basis" || cfg.command == "certify") c["pair"] = cfg.all_levels ? "all" : cfg.pair;
  if (cfg.command == "certify") {
    c["weights"] = cfg.weights;
    c["conjugate_R"] = cfg.conjugate_R;
    c["ppt_search"] = cfg.ppt_search;
  }
  c["tol"] = cfg.tol;
  c["seed"] = cfg.seed;
  if (cfg.command == "seesaw" || cfg.command == "upb") {
    c["seesaw"] = Json{{"restarts", cfg.restarts}, {"iterations", cfg.iterations}, {"tol", cfg.seesaw_tol}};
  }
  if (cfg.command == "seesaw") c["target"] = cfg.target;
  if (cfg.command == "upb") {
    c["threshold"] = cfg.threshold;
    c["fixture"] = cfg.fixture;
    c["search_F"] = cfg.search_F;
    if (cfg.search_F) c["grid"] = cfg.grid.empty() ? "0,1,-1,i,-i,inf" : cfg.grid;
  }
  c["format"] = cfg.format;
  c["no_assert"] = cfg.no_assert;
  return c;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_dims) {
  auto* d = sub->add_option("--dims", cfg.dims_raw, "Local dimensions, e.g. 2,3,4 (repeatable)");
  if (needs_dims) d->required();
  sub->add_option("--seed", cfg.seed_flag, "Seed (falls back to CES_KIT_SEED, then 0)");
  sub->add_option("--tol", cfg.tol, "Certification tolerance")->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
  sub->add_flag("--no-assert", cfg.no_assert, "Survey mode: exit 0 even when a certification fails");
  sub->add_flag("--timing", cfg.timing, "Record wall-clock time (makes output non-deterministic)");
}

void add_seesaw_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--restarts", cfg.restarts, "Seesaw restarts")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--iterations", cfg.iterations, "Seesaw cycles per restart")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--seesaw-tol", cfg.seesaw_tol, "Stop a restart once a cycle gains less than this")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"ces-kit: completely entangled subspaces, orthonormal bases and NPT certificates"};
  app.name("ces-kit");
  app.require_subcommand(1, 1);

  auto* dims = app.add_subcommand("dims", "Level sizes |I_n| and the dimension M of S");
  add_common(dims, cfg, true);

  auto* basis = app.add_subcommand("basis", "Build the orthonormal basis of S and check its invariants");
  add_common(basis, cfg, true);
  basis->add_option("--pair", cfg.pair, "Slot pair j,j' (1-based) or 'all'")->capture_default_str();
  basis->add_flag("--all-levels", cfg.all_levels, "Every ordered slot pair");
  basis->add_flag("!--no-vectors", cfg.vectors, "Omit the basis vectors from the report");

  auto* certify = app.add_subcommand("certify", "Certify NPT of P_S or of weighted mixtures");
  add_common(certify, cfg, true);
  certify->add_option("--pair", cfg.pair, "Slot pair j,j' (1-based) or 'all'")->capture_default_str();
  certify->add_flag("--all-levels", cfg.all_levels, "Certify every slot j");
  certify->add_option("--weights", cfg.weights, "uniform | random | degenerate | PATH")->capture_default_str();
  certify->add_flag("--conjugate-R", cfg.conjugate_R, "Also certify R rho R");
  certify->add_option("--ppt-search", cfg.ppt_search, "Survey N random mixtures for the largest min PT eigenvalue");

  auto* seesaw = app.add_subcommand("seesaw", "Maximize the product-state overlap with P_S or P_T");
  add_common(seesaw, cfg, true);
  add_seesaw_opts(seesaw, cfg);
  seesaw->add_option("--target", cfg.target, "S or T")->check(CLI::IsMember({"S", "T"}))->capture_default_str();

  auto* upb = app.add_subcommand("upb", "Validate a product basis and build its bound-entangled state");
  add_common(upb, cfg, false);
  add_seesaw_opts(upb, cfg);
  upb->add_option("--fixture", cfg.fixture, "Product family JSON");
  upb->add_flag("--search-F", cfg.search_F, "Search orthogonal z^lambda families in T");
  upb->add_option("--grid", cfg.grid, "Comma-separated lambda grid (numbers, i, a+bi, inf)");
  upb->add_option("--threshold", cfg.threshold, "Unextendability threshold on the seesaw value")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ces-kit: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    cfg.dims = parse_dims(cfg.dims_raw);
    cfg.seed = resolve_seed(cfg);
    if (cfg.command == "dims") outcome = cmd_dims(cfg);
    if (cfg.command == "basis") outcome = cmd_basis(cfg);
    if (cfg.command == "certify") outcome = cmd_certify(cfg);
    if (cfg.command == "seesaw") outcome = cmd_seesaw(cfg);
    if (cfg.command == "upb") outcome = cmd_upb(cfg);
  } catch (const UsageError& e) {
    err << "ces-kit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "ces-kit: " << e.what() << "\n";
    return kExitUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (cfg.format == "csv") {
    text = outcome.csv;
  } else {
    Json doc{{"schema", kSchema}, {"config", config_json(cfg)}, {"results", outcome.results}};
    doc["passed"] = outcome.passed;
    doc["timing"] = cfg.timing ? Json{{"recorded", true}, {"wall_seconds", seconds}} : Json{{"recorded", false}};
    text = dump_json(doc) + "\n";
  }
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "ces-kit: cannot write " << cfg.out_path << "\n";
      return kExitUsage;
    }
    f << text;
  }
  if (!outcome.passed && !cfg.no_assert) {
    err << "ces-kit: certification failed\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace ces
