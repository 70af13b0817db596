#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minbasis/minbasis.hpp"

namespace minbasis::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kNumericalError = 3 };

struct Globals {
  bool json = false;
  bool strict = false;
  std::optional<double> tol_flag;
  std::uint64_t seed = 0;
};

/// Resolved tolerance: the flag wins over MINBASIS_TOL, which wins over the
/// default max(rows, cols) * eps * sigma_1 policy.
struct ToleranceContext {
  std::optional<double> tol;
  std::string source = "default";

  Json to_json() const {
    return {{"policy", tol ? "fixed" : "relative"},
            {"value", tol ? Json(*tol) : Json(nullptr)},
            {"source", source},
            {"default_rule", "max(rows, cols) * eps * sigma_1"},
            {"marginal_gap", kMarginalGap}};
  }
};

inline ToleranceContext resolve_tolerance(const Globals& g) {
  ToleranceContext t;
  if (g.tol_flag) {
    if (!(*g.tol_flag >= 0.0)) throw ParseError("--tol must be a non-negative number");
    t.tol = g.tol_flag;
    t.source = "flag";
  } else if (const char* env = std::getenv("MINBASIS_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0))
      throw ParseError(std::string("MINBASIS_TOL is not a non-negative number: '") + env + "'");
    t.tol = v;
    t.source = "env";
  }
  return t;
}

template <FieldScalar T>
Json digest(const std::string& path, const PolyMat<T>& p) {
  return {{"path", path},
          {"rows", p.rows()},
          {"cols", p.cols()},
          {"degree_bound", p.degree_bound()},
          {"field", to_string(PolyMat<T>::field())}};
}

/// Aligned text output.
class Text {
 public:
  explicit Text(std::ostream& out) : out_(out) {}

  template <class V>
  Text& kv(const std::string& key, const V& value) {
    out_ << std::left << std::setw(24) << key << ": " << value << '\n';
    return *this;
  }
  Text& line(const std::string& s) {
    out_ << s << '\n';
    return *this;
  }

 private:
  std::ostream& out_;
};

inline std::string fmt(double x, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

template <class V>
std::string list(const std::vector<V>& v, const char* open = "[", const char* close = "]") {
  std::ostringstream s;
  s << open;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << close;
  return s.str();
}

inline std::string shape(Index r, Index c, int g, Field f) {
  return std::to_string(r) + " x " + std::to_string(c) + ", grade " + std::to_string(g) + ", " + to_string(f);
}

inline void profile_table(Text& tx, const RankProfile& p) {
  tx.line("   k      r_k      n_k");
  for (int k = 1; k <= static_cast<int>(p.ranks.size()); ++k) {
    std::ostringstream s;
    s << std::right << std::setw(4) << k << std::setw(9) << p.rank(k) << std::setw(9) << p.nullity(k);
    tx.line(s.str());
  }
}

inline std::string verdict(const Certificate& c) {
  return std::string(c.is_minimal_basis ? "minimal basis" : "NOT a minimal basis") + " (" + to_string(c.reason) + ")";
}

/// Result of one subcommand before it is printed.
struct Outcome {
  Json input;
  Json results;
  int code = kOk;
  std::string text;
};

template <FieldScalar T>
Outcome run_analyze(const std::string& path, const PolyMat<T>& m, std::optional<int> kmax,
                    const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  const Certificate cert = certify_minimal_basis(m, tc.tol);
  const RankProfile prof =
      kmax ? rank_profile(m.degree_bound() >= 1 ? m : m.with_degree_bound(1), kmax, tc.tol) : cert.profile;
  o.results = {{"profile", to_json(prof)}, {"certificate", to_json(cert)}};
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), PolyMat<T>::field()));
  profile_table(tx, prof);
  tx.kv("alphas", list(prof.alphas));
  tx.kv("d'", prof.d_prime ? std::to_string(*prof.d_prime) : "not reached");
  if (prof.normal_rank_full)
    tx.kv("right minimal indices", list(indices_from_alphas(prof.alphas), "{", "}"));
  else
    tx.kv("right minimal indices", "undefined (not of full row normal rank)");
  tx.kv("row degrees", list(cert.row_degrees));
  tx.kv("degree sum", std::to_string(cert.degree_sum_observed) + " observed vs " +
                          std::to_string(cert.degree_sum_expected) + " row-degree sum");
  tx.kv("verdict", verdict(cert));
  if (cert.marginal) tx.kv("warning", "marginal rank decision (gap ratio < 1e3)");
  o.text = s.str();
  return o;
}

template <FieldScalar T>
Outcome run_certify(const std::string& path, const PolyMat<T>& m, bool leading, int classical,
                    std::uint64_t seed, const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  const Certificate cert = leading ? certify_full_leading(m, tc.tol) : certify_minimal_basis(m, tc.tol);
  o.results = {{"method", leading ? "full_leading" : "rank_conditions"}, {"certificate", to_json(cert)}};
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), PolyMat<T>::field()));
  tx.kv("method", leading ? "leading coefficient + Sylvester row rank" : "Sylvester rank conditions");
  tx.kv("d'", cert.d_prime ? std::to_string(*cert.d_prime) : "not reached");
  tx.kv("hr rank", cert.hr_rank);
  tx.kv("tolerance used", fmt(cert.tolerance_used));
  tx.kv("verdict", verdict(cert));
  if (classical > 0) {
    ClassicalOptions opts;
    opts.tol = tc.tol;
    const ClassicalCheck cc = classical_check(m, classical, seed, opts);
    o.results["classical"] = to_json(cc);
    tx.kv("sampled classical test", std::string(cc.passed() ? "no defect found" : "defect found") +
                                        " (min sigma_m = " + fmt(cc.min_sigma_m) + ", inconclusive by design)");
  }
  o.text = s.str();
  o.code = cert.is_minimal_basis ? kOk : kNegative;
  return o;
}

template <FieldScalar T>
Outcome run_fullsyl(const std::string& path, const PolyMat<T>& m, const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  const FullSylReport r = has_full_sylvester_rank(m, tc.tol);
  o.results = to_json(r);
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), PolyMat<T>::field()));
  tx.kv("k', t", std::to_string(r.k_prime_t.k_prime) + ", " + std::to_string(r.k_prime_t.t));
  for (const auto& c : r.checked_ranks)
    tx.kv("S_" + std::to_string(c.k) + (c.full_column ? " full column" : " full row"),
          std::to_string(c.rank) + " / " + std::to_string(c.required) + " (sigma " + fmt(c.sigma_required) +
              ", margin " + fmt(c.margin(), 3) + ")");
  tx.kv("predicted indices", list(r.predicted_indices, "{", "}"));
  tx.kv("verdict", r.has_full_sylvester_rank ? "full-Sylvester-rank" : "NOT full-Sylvester-rank");
  o.text = s.str();
  o.code = r.has_full_sylvester_rank ? kOk : kNegative;
  return o;
}

template <FieldScalar T>
Outcome run_radius(const std::string& path, const PolyMat<T>& m, const std::string& kind, int scan_extra,
                   const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), PolyMat<T>::field()));
  const Norms norms = s1_norms(m);
  if (kind == "sharp") {
    const SharpWitness<T> w = sharp_witness_flat(m);
    o.results = {{"kind", "sharp_flat"}, {"radius", num(w.sigma)}, {"witness", to_json(w)}};
    tx.line("radius \xe2\x89\x88 " + fmt(w.sigma, 4) + " at k=1 (sharp)");
    tx.kv("witness distance", fmt(w.distance, 16));
  } else {
    const RadiusReport r =
        kind == "fullsyl" ? robustness_radius_fullsyl(m, tc.tol) : robustness_radius_minimal(m, scan_extra, tc.tol);
    o.results = to_json(r);
    tx.line("radius \xe2\x89\x88 " + fmt(r.radius, 4) + " at k=" + std::to_string(r.k_used));
    tx.line("   k        sigma_min(S_k)    sigma/sqrt(k)");
    for (const auto& c : r.scanned) {
      std::ostringstream row;
      row << std::right << std::setw(4) << c.k << std::setw(22) << fmt(c.sigma, 12) << std::setw(18)
          << fmt(c.radius, 12);
      tx.line(row.str());
    }
  }
  o.results["s1_norm_2"] = num(norms.spectral);
  o.results["s1_norm_F"] = num(norms.frobenius);
  tx.kv("||S_1(M)||_2", fmt(norms.spectral, 12));
  o.text = s.str();
  return o;
}

template <FieldScalar T>
Outcome run_dual(const std::string& path, const PolyMat<T>& m, const std::optional<std::string>& out_path,
                 const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  const DualPair<T> pair = dual_minimal_basis(m, tc.tol);
  const bool n_fullsyl = check_dual_fullsyl(pair, tc.tol);
  o.results = to_json(pair);
  o.results["n_full_sylvester_rank"] = n_fullsyl;
  if (out_path) write_polymat_file(pair.N, *out_path);
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), PolyMat<T>::field()));
  tx.kv("k', t", std::to_string(pair.k_prime_t.k_prime) + ", " + std::to_string(pair.k_prime_t.t));
  tx.kv("dual row degrees", list(row_degrees(pair.N), "{", "}"));
  tx.kv("residual ||M N^T||", fmt(pair.residual, 3));
  tx.kv("N full-Sylvester-rank", n_fullsyl ? "yes" : "no");
  if (out_path) tx.kv("written", *out_path);
  o.text = s.str();
  return o;
}

template <FieldScalar T>
Outcome run_perturb(const std::string& mpath, const PolyMat<T>& m, const std::string& dpath,
                    const std::optional<std::string>& npath, const ToleranceContext& tc) {
  Outcome o;
  const PolyMat<T> dm = read_polymat_file_as<T>(dpath);
  o.input = {{"M", digest(mpath, m)}, {"dM", digest(dpath, dm)}};
  DualPair<T> pair = [&] {
    if (!npath) return dual_minimal_basis(m, tc.tol);
    const PolyMat<T> n = read_polymat_file_as<T>(*npath);
    o.input["N"] = digest(*npath, n);
    const DualityCheck<T> chk = verify_duality(m, n, tc.tol);
    if (!chk.valid) throw PreconditionError("supplied N is not a dual minimal basis of M: " + chk.detail);
    DualPair<T> p = *chk.pair;
    return p;
  }();
  const PerturbReport<T> r = propagate_perturbation(pair, dm, tc.tol);
  o.results = to_json(r);
  std::ostringstream s;
  Text tx(s);
  tx.kv("case", to_string(r.thetas.which));
  tx.kv("theta1, theta2", fmt(r.thetas.theta1) + ", " + fmt(r.thetas.theta2));
  tx.kv("||S_1(dM)||_2", fmt(r.applied_norm) + " < " + fmt(r.admissible_radius) + " (admissible)");
  tx.kv("relative change of N", fmt(r.relative_change) + " <= " + fmt(r.guaranteed_bound) +
                                    (r.bound_holds() ? " (holds)" : " (VIOLATED)"));
  tx.kv("perturbed pair", r.perturbed.valid ? std::string("dual minimal bases") : r.perturbed.detail);
  tx.kv("perturbed N degrees", list(r.perturbed_row_degrees, "{", "}"));
  o.text = s.str();
  o.code = r.bound_holds() && r.perturbed.valid ? kOk : kNegative;
  return o;
}

template <FieldScalar T>
Outcome run_lify(const std::string& kpath, const std::string& mpath, const std::optional<std::string>& npath,
                 const std::optional<std::string>& dkpath, const std::optional<std::string>& dmpath,
                 const ToleranceContext& tc) {
  Outcome o;
  const PolyMat<T> k = read_polymat_file_as<T>(kpath);
  const PolyMat<T> m = read_polymat_file_as<T>(mpath);
  o.input = {{"K", digest(kpath, k)}, {"M", digest(mpath, m)}};
  std::optional<PolyMat<T>> n;
  if (npath) {
    n = read_polymat_file_as<T>(*npath);
    o.input["N"] = digest(*npath, *n);
  }
  const Lification<T> lif = build_lification(k, m, n, tc.tol);
  o.results = {{"lification", to_json(lif)}};
  std::ostringstream s;
  Text tx(s);
  tx.kv("ell, k'", std::to_string(lif.ell) + ", " + std::to_string(lif.k_prime));
  tx.kv("P", std::to_string(lif.P.rows()) + " x " + std::to_string(lif.P.cols()) + ", grade " +
                 std::to_string(lif.P.degree_bound()));
  tx.kv("recovery residual", fmt(lif.recovery_residual, 3));
  if (dkpath.has_value() != dmpath.has_value()) throw PreconditionError("--dk and --dm must be given together");
  if (dkpath) {
    const PolyMat<T> dk = read_polymat_file_as<T>(*dkpath);
    const PolyMat<T> dm = read_polymat_file_as<T>(*dmpath);
    o.input["dK"] = digest(*dkpath, dk);
    o.input["dM"] = digest(*dmpath, dm);
    const BackwardErrorReport<T> be = backward_error_map(lif, dk, dm, tc.tol);
    const ShiftCheck sc = minimal_index_shift_check(lif, dk, dm, tc.tol);
    o.results["backward_error"] = to_json(be);
    o.results["index_shift"] = to_json(sc);
    tx.kv("C_PL", fmt(be.C_PL));
    tx.kv("relative dP", fmt(be.relative_dP) + " <= " + fmt(be.bound_rhs) + (be.holds() ? " (holds)" : " (VIOLATED)"));
    tx.kv("index shift", sc.checked ? (sc.passed ? "holds" : "FAILS") : sc.notice);
    o.code = be.holds() && (!sc.checked || sc.passed) ? kOk : kNegative;
  }
  o.text = s.str();
  return o;
}

inline Outcome run_generic(Index m, Index n, int d, int trials, std::uint64_t seed, const std::string& dist,
                           bool zero_leading, bool complex_field, const ToleranceContext& tc) {
  Outcome o;
  const Distribution dd = parse_distribution(dist);
  const GenericityRecord rec = complex_field ? genericity_experiment<Complex>(m, n, d, trials, seed, dd, zero_leading, tc.tol)
                                             : genericity_experiment<double>(m, n, d, trials, seed, dd, zero_leading, tc.tol);
  o.input = {{"m", m}, {"n", n}, {"d", d}, {"field", complex_field ? "complex" : "real"}};
  o.results = to_json(rec);
  std::ostringstream s;
  Text tx(s);
  tx.kv("(m, n, d)", "(" + std::to_string(m) + ", " + std::to_string(n) + ", " + std::to_string(d) + ")");
  tx.kv("distribution", dist + (zero_leading ? ", C_d = 0" : ""));
  tx.kv("successes", std::to_string(rec.successes) + " / " + std::to_string(rec.trials));
  tx.kv("min margin", fmt(rec.min_margin, 3));
  o.text = s.str();
  return o;
}

inline Outcome run_oracle(const std::string& path, const PolyMat<double>& m, std::optional<int> k,
                          std::optional<int> kmax, const ToleranceContext& tc) {
  Outcome o;
  o.input = digest(path, m);
  std::ostringstream s;
  Text tx(s);
  tx.kv("matrix", shape(m.rows(), m.cols(), m.degree_bound(), Field::real));
  if (k) {
    const RationalMatrix sk = exact_sylvester(m, *k);
    const Index r = exact_rank(sk);
    const RankDecision fl = rank_nullity(sylvester(m, *k).data, tc.tol);
    o.results = {{"k", *k}, {"exact_rank", r}, {"floating_rank", fl.rank}, {"agree", r == fl.rank}};
    tx.kv("exact rank S_" + std::to_string(*k), r);
    tx.kv("floating rank", fl.rank);
  } else {
    const RankProfile ex = exact_rank_profile(m, kmax);
    const RankProfile fl = rank_profile(m, kmax, tc.tol);
    const bool agree = ex.ranks == fl.ranks && ex.d_prime == fl.d_prime;
    Json exj = to_json(ex);
    exj.erase("tolerances");
    exj.erase("marginal");
    exj.erase("evaluation_rank");
    o.results = {{"exact_profile", exj}, {"floating_ranks", fl.ranks}, {"agree", agree}};
    profile_table(tx, ex);
    tx.kv("alphas", list(ex.alphas));
    tx.kv("d'", ex.d_prime ? std::to_string(*ex.d_prime) : "not reached");
    tx.kv("floating path agrees", agree ? "yes" : "NO");
  }
  o.text = s.str();
  return o;
}

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 ok, 1 negative verdict under --strict, 2 input error, 3 numerical
/// breakdown.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal-basis analysis of polynomial matrices via Sylvester-matrix ranks", "minbasis"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Emit a JSON report");
  app.add_flag("--strict", g.strict, "Exit 1 on a negative verdict");
  app.add_option("--tol", g.tol_flag, "Fixed rank tolerance (overrides MINBASIS_TOL)");
  app.add_option("--seed", g.seed, "Random seed");

  std::string file, file2;
  std::optional<int> kmax, kidx;
  std::optional<std::string> npath, outpath, dkpath, dmpath;
  bool leading = false, zero_leading = false, complex_field = false;
  int classical = 0, scan_extra = 3, trials = 1000;
  std::string kind = "minimal", dist = "gaussian";
  long gm = 0, gn = 0;
  int gd = 0;

  auto* analyze = app.add_subcommand("analyze", "Rank profile, minimal indices and certificate");
  analyze->add_option("file", file, "Polynomial matrix (JSON)")->required();
  analyze->add_option("--kmax", kmax, "Largest Sylvester index scanned");

  auto* certify = app.add_subcommand("certify", "Minimal-basis certificate");
  certify->add_option("file", file)->required();
  certify->add_flag("--leading", leading, "Use the full-rank leading coefficient test");
  certify->add_option("--classical", classical, "Also run the sampled evaluation test with this many points");

  auto* fullsyl = app.add_subcommand("fullsyl", "Full-Sylvester-rank detector");
  fullsyl->add_option("file", file)->required();

  auto* radius = app.add_subcommand("radius", "Robustness radius");
  radius->add_option("file", file)->required();
  radius->add_option("--kind", kind, "minimal | fullsyl | sharp")->check(CLI::IsMember({"minimal", "fullsyl", "sharp"}));
  radius->add_option("--scan-extra", scan_extra, "Extra Sylvester indices scanned past the first full-row-rank one");

  auto* dual = app.add_subcommand("dual", "Dual minimal basis");
  dual->add_option("file", file)->required();
  dual->add_option("--out", outpath, "Write N to this file");

  auto* perturb = app.add_subcommand("perturb", "Propagate a perturbation of M to its dual basis");
  perturb->add_option("file", file, "M")->required();
  perturb->add_option("delta", file2, "dM")->required();
  perturb->add_option("--dual", npath, "Dual basis N (default: computed)");

  auto* generic = app.add_subcommand("generic", "Monte Carlo genericity experiment");
  generic->add_option("--m", gm)->required()->check(CLI::PositiveNumber);
  generic->add_option("--n", gn)->required()->check(CLI::PositiveNumber);
  generic->add_option("--d", gd)->required()->check(CLI::PositiveNumber);
  generic->add_option("--trials", trials)->check(CLI::PositiveNumber);
  generic->add_option("--dist", dist)->check(CLI::IsMember({"gaussian", "uniform"}));
  generic->add_flag("--zero-leading", zero_leading, "Sample with C_d = 0");
  generic->add_flag("--complex", complex_field, "Complex coefficients");

  auto* lify = app.add_subcommand("lify", "Strong l-ification and its backward-error constant");
  lify->add_option("K", file, "K")->required();
  lify->add_option("M", file2, "M")->required();
  lify->add_option("--dual", npath, "Dual basis N (default: computed)");
  lify->add_option("--dk", dkpath, "Perturbation of K");
  lify->add_option("--dm", dmpath, "Perturbation of M");

  auto* oracle = app.add_subcommand("oracle-rank", "Exact rational ranks");
  oracle->add_option("file", file)->required();
  oracle->add_option("--k", kidx, "Rank of S_k only");
  oracle->add_option("--kmax", kmax, "Largest Sylvester index scanned");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  Outcome o;
  ToleranceContext tc;
  bool verdict_command = true;
  try {
    tc = resolve_tolerance(g);
    if (*analyze) {
      command = "analyze";
      verdict_command = false;
      o = std::visit([&](const auto& m) { return run_analyze(file, m, kmax, tc); }, read_polymat_file(file));
    } else if (*certify) {
      command = "certify";
      o = std::visit([&](const auto& m) { return run_certify(file, m, leading, classical, g.seed, tc); },
                     read_polymat_file(file));
    } else if (*fullsyl) {
      command = "fullsyl";
      o = std::visit([&](const auto& m) { return run_fullsyl(file, m, tc); }, read_polymat_file(file));
    } else if (*radius) {
      command = "radius";
      o = std::visit([&](const auto& m) { return run_radius(file, m, kind, scan_extra, tc); },
                     read_polymat_file(file));
    } else if (*dual) {
      command = "dual";
      o = std::visit([&](const auto& m) { return run_dual(file, m, outpath, tc); }, read_polymat_file(file));
    } else if (*perturb) {
      command = "perturb";
      o = std::visit([&](const auto& m) { return run_perturb(file, m, file2, npath, tc); }, read_polymat_file(file));
    } else if (*generic) {
      command = "generic";
      o = run_generic(gm, gn, gd, trials, g.seed, dist, zero_leading, complex_field, tc);
      o.results["seed"] = g.seed;
    } else if (*lify) {
      command = "lify";
      const bool cplx = std::holds_alternative<PolyMat<Complex>>(read_polymat_file(file2)) ||
                        std::holds_alternative<PolyMat<Complex>>(read_polymat_file(file));
      o = cplx ? run_lify<Complex>(file, file2, npath, dkpath, dmpath, tc)
               : run_lify<double>(file, file2, npath, dkpath, dmpath, tc);
    } else if (*oracle) {
      command = "oracle-rank";
      const AnyPolyMat any = read_polymat_file(file);
      if (!std::holds_alternative<PolyMat<double>>(any))
        throw PreconditionError("oracle-rank accepts real matrices only");
      o = run_oracle(file, std::get<PolyMat<double>>(any), kidx, kmax, tc);
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (g.json) {
    Json report;
    report["command"] = command;
    report["input"] = o.input;
    report["results"] = o.results;
    report["tolerances"] = tc.to_json();
    report["wall_time"] = wall;
    out << report.dump(2) << '\n';
  } else {
    out << o.text;
    Text(out).kv("tolerance", tc.tol ? fmt(*tc.tol) + " (" + tc.source + ")" : std::string("relative default"));
  }
  if (g.strict && verdict_command) return o.code;
  return kOk;
}

}  // namespace minbasis::cli
