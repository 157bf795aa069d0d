#include "randers/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "randers/io.hpp"

namespace randers {

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level_from_env() {
  const char* env = std::getenv("RANDERS_LOG");
  if (env == nullptr) return LogLevel::Quiet;
  const std::string v = env;
  if (v == "debug" || v == "2") return LogLevel::Debug;
  if (v == "info" || v == "1") return LogLevel::Info;
  return LogLevel::Quiet;
}

struct Options {
  std::string config;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::string out_path;
  std::optional<double> tolerance;

  std::optional<int> l, m;
  std::optional<double> x1, x2, L;

  int n = 4;
  std::string kind = "singular";
  int candidates = 8;
  int points = 20000;
  int k = 12;
  int samples = 50;
  std::optional<double> time;
  double x = 0.5;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err), level_(log_level_from_env()) {}

  int validate();
  int solve();
  int verify_orbit();
  int verify_sp_scan();
  int verify_eigenlemma();
  int verify_commutator();
  int verify_displacement();
  int verify_probe();

 private:
  void log(LogLevel lvl, const std::string& msg) const {
    if (level_ >= lvl) err_ << (lvl == LogLevel::Debug ? "[debug] " : "[info] ") << msg << '\n';
  }

  const nlohmann::json& config() {
    if (!config_) {
      if (o_.config.empty()) {
        config_ = nlohmann::json::object();
      } else {
        std::ifstream in(o_.config);
        if (!in) throw UsageError("cannot open config " + o_.config);
        config_ = nlohmann::json::parse(in);
        if (!config_->is_object()) throw UsageError("config must be a JSON object");
      }
    }
    return *config_;
  }

  std::optional<RandersSpec> config_spec() {
    const auto& j = config();
    if (j.contains("family")) return spec_from_json(j);
    if (j.contains("spec")) return spec_from_json(j.at("spec"));
    return std::nullopt;
  }

  OrbitParams params() {
    const auto& j = config();
    OrbitParams p = j.contains("params") ? params_from_json(j.at("params")) : params_from_json(j);
    if (o_.l) p.l = *o_.l;
    if (o_.m) p.m = *o_.m;
    if (o_.x1) p.x1 = *o_.x1;
    if (o_.x2) p.x2 = *o_.x2;
    if (o_.L) p.L = *o_.L;
    return p;
  }

  int trials(int fallback) const { return o_.trials.value_or(fallback); }
  double tolerance(double fallback) const { return o_.tolerance.value_or(fallback); }

  // CSV goes to --out when given, else to the output stream.
  template <typename Writer>
  void emit(Writer write) {
    if (o_.out_path.empty()) {
      write(out_);
      return;
    }
    std::ofstream file(o_.out_path);
    if (!file) throw UsageError("cannot write " + o_.out_path);
    write(file);
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  LogLevel level_;
  std::optional<nlohmann::json> config_;
};

int Runner::validate() {
  const auto spec = config_spec();
  if (!spec) throw UsageError("validate needs --config with a Randers spec");
  const auto violations = validate_spec(*spec);
  if (violations.empty()) {
    out_ << "valid\n";
    return kExitPass;
  }
  for (const auto& v : violations) out_ << v << '\n';
  return kExitFail;
}

int Runner::solve() {
  const OrbitParams p = params();
  RandersSpec s;
  try {
    s = solve_metric(p);
  } catch (const Error& e) {
    err_ << "infeasible orbit parameters: " << e.what() << '\n';
    return kExitFail;
  }
  const Quadratic q = constant_length_identity(s, p);
  const double tol = tolerance(1e-10);
  const double worst = std::max({std::abs(q.k2), std::abs(q.k1), std::abs(q.k0)});
  nlohmann::json j;
  j["spec"] = spec_to_json(s);
  j["params"] = params_to_json(p);
  j["residuals"] = {q.k2, q.k1, q.k0};
  j["tolerance"] = tol;
  out_ << j.dump(2) << '\n';
  return worst <= tol ? kExitPass : kExitFail;
}

int Runner::verify_orbit() {
  const OrbitParams p = params();
  RandersSpec s;
  if (const auto spec = config_spec()) {
    s = *spec;
  } else {
    try {
      s = solve_metric(p);
    } catch (const Error& e) {
      err_ << "infeasible orbit parameters: " << e.what() << '\n';
      return kExitFail;
    }
  }
  check_feasible(p);
  RngStream rng(o_.seed);
  const AlgebraElement x = AlgebraElement::unitary(orbit_generator(p));
  ConstantLengthReport r = orbit_length_report(s, x, p.L, trials(1000), rng);
  if (o_.tolerance) {
    r.tolerance = *o_.tolerance * p.L;
    r.verdict = r.spread() <= r.tolerance ? Verdict::Constant : Verdict::NonConstant;
  }
  std::ostringstream id;
  id << "X(l=" << p.l << ";m=" << p.m << ";x1=" << format_double(p.x1) << ";x2=" << format_double(p.x2) << ")";
  emit([&](std::ostream& os) { write_length_csv(os, {id.str()}, {r}); });
  log(LogLevel::Info, "orbit spread " + format_double(r.spread()) + " over " + std::to_string(r.trials) + " trials");
  return r.verdict == Verdict::Constant ? kExitPass : kExitFail;
}

int Runner::verify_sp_scan() {
  const RandersSpec s = config_spec().value_or(RandersSpec::sp_sphere(1, 2.0, 1.5, 1.0, 0.5));
  if (s.family != Family::SpSphere) throw UsageError("sp-scan needs an sp_sphere spec");
  if (const auto v = validate_spec(s); !v.empty()) throw UsageError("invalid spec: " + v.front());
  if (s.a2 == s.b) throw UsageError("sp-scan needs a2 != b");
  RngStream rng(o_.seed);
  std::vector<AlgebraElement> cands;
  std::vector<std::string> ids;
  for (int c = 0; c < o_.candidates; ++c) {
    HVector diag;
    for (int k = 0; k <= s.n; ++k) {
      Quaternion q = Quaternion::imaginary(rng.normal(), rng.normal(), rng.normal()).normalized();
      diag.push_back(rng.uniform(0.2, 1.0) * q);
    }
    cands.push_back(AlgebraElement::symplectic(QuaternionMatrix::diagonal(diag), rng.uniform(-1.0, 1.0)));
    ids.push_back("diag" + std::to_string(c));
  }
  const double L = 1.0;
  const auto reports = sp_central_only_scan(s, cands, trials(1000), rng, L);
  emit([&](std::ostream& os) { write_length_csv(os, ids, reports); });
  const double gap = tolerance(kNonConstantGap) * L;
  const bool all_non_constant =
      std::all_of(reports.begin(), reports.end(), [gap](const ConstantLengthReport& r) { return r.spread() >= gap; });
  return all_non_constant ? kExitPass : kExitFail;
}

int Runner::verify_eigenlemma() {
  if (o_.n < 1) throw UsageError("--n must be positive");
  RngStream rng(o_.seed);
  const RngStream base(rng.next_u64());
  const double eps = tolerance(kPhaseSlack);
  std::vector<CheckerRow> rows;
  int violations = 0;
  for (int t = 0; t < trials(10000); ++t) {
    RngStream s = base.derive(static_cast<std::uint64_t>(t));
    const UnitaryMatrix p = haar_unitary(o_.n, s), q = haar_unitary(o_.n, s);
    CMatrix both(o_.n, 2 * o_.n);
    both << p.matrix(), q.matrix();
    CheckerRow row{t, inputs_hash(both), false, 0.0};
    try {
      const PhaseBoundReport r = phase_bound_check(p, q, eps);
      row.verdict = r.verdict;
      row.worst_residual = r.worst_violation;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BranchUndefined) throw;
      row.verdict = true;
      log(LogLevel::Debug, "trial " + std::to_string(t) + " skipped: eigenvalue -1");
    }
    if (!row.verdict) ++violations;
    rows.push_back(row);
  }
  emit([&](std::ostream& os) { write_checker_csv(os, rows); });
  log(LogLevel::Info, std::to_string(violations) + " phase-bound violations");
  return violations == 0 ? kExitPass : kExitFail;
}

int Runner::verify_commutator() {
  const int l = o_.l.value_or(2), m = o_.m.value_or(2);
  if (l < 1 || m < 1) throw UsageError("--l and --m must be positive");
  if (o_.kind != "singular" && o_.kind != "generic") throw UsageError("--kind is singular or generic");
  RngStream rng(o_.seed);
  const RngStream base(rng.next_u64());
  const double eig_tol = tolerance(kEig1Tolerance);
  const auto grid = default_t_grid();
  std::vector<CheckerRow> rows;
  int failures = 0;
  for (int t = 0; t < trials(200); ++t) {
    RngStream s = base.derive(static_cast<std::uint64_t>(t));
    const UnitaryMatrix u = o_.kind == "singular" ? singular_block_unitary(l, m, s) : haar_unitary(l + m, s);
    const CommutatorReport r = commutator_eig1_persistence(u, l, m, grid);
    CheckerRow row{t, inputs_hash(u.matrix()), false, 0.0};
    if (o_.kind == "singular") {
      row.verdict = r.all_or_nothing && r.common_eigenvector &&
                    std::all_of(r.spectral_distance.begin(), r.spectral_distance.end(), [&](double d) { return d <= eig_tol; });
      row.worst_residual = r.common_residual;
    } else {
      const double closest = *std::min_element(r.spectral_distance.begin(), r.spectral_distance.end());
      row.verdict = closest >= eig_tol;
      row.worst_residual = closest;
    }
    if (!row.verdict) ++failures;
    rows.push_back(row);
  }
  emit([&](std::ostream& os) { write_checker_csv(os, rows); });
  return failures == 0 ? kExitPass : kExitFail;
}

int Runner::verify_displacement() {
  const auto& j = config();
  const bool orbit_flow = j.contains("params") || o_.x1 || o_.x2 || o_.l || o_.m;
  const RandersSpec s = config_spec().value_or(orbit_flow ? solve_metric(params()) : RandersSpec::u_sphere(1, 1.0, 1.0, 0.0));
  if (s.family == Family::SpSphere) throw UsageError("displacement is not available on the Sp family");
  const ModelSpace space = model_space_of(s);
  RngStream rng(o_.seed);
  const SphereGraph g = build_graph(space, s, o_.points, o_.k, rng);
  log(LogLevel::Info, "graph with " + std::to_string(g.size()) + " vertices, scale " + format_double(g.scale()));
  const double t = o_.time.value_or(0.5);
  std::optional<FlowIsometry> flow;
  if (s.family == Family::SU2) {
    flow = FlowIsometry::su2(j.contains("X") ? j.at("X").get<Vec3>() : Vec3{0.0, 0.0, 1.0}, space.v, t);
  } else if (orbit_flow) {
    flow = FlowIsometry::unitary(orbit_generator(params()), t);
  } else {
    flow = FlowIsometry::unitary(SkewHermitian::diagonal(std::vector<double>(s.n + 1, 1.0)), t);
  }
  const DisplacementReport r = displacement_profile(g, *flow, o_.samples, rng, tolerance(kDisplacementTolerance));
  emit([&](std::ostream& os) { write_displacement_csv(os, r); });
  err_ << "displacement min " << format_double(r.min) << " max " << format_double(r.max) << " mean "
       << format_double(r.mean) << " spread " << format_double(r.relative_spread()) << " graph spread "
       << format_double(r.graph_spread) << '\n';
  return r.constant ? kExitPass : kExitFail;
}

int Runner::verify_probe() {
  const int l = o_.l.value_or(1), m = o_.m.value_or(1);
  RngStream rng(o_.seed);
  const ProbeReport r = geodesic_nonintersection_probe(o_.x, l, m, trials(1000), rng);
  err_ << "probe events " << r.events << " of " << r.trials << ", closest " << format_double(r.min_distance) << '\n';
  return r.verdict ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homogeneous Randers metrics on spheres: constant-length Killing fields and Clifford-Wolf checks",
               "randers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "JSON config: a Randers spec, or {\"spec\": ..., \"params\": ...}");
  app.add_option("--seed", o.seed, "seed for every random draw");
  app.add_option("--trials", o.trials, "trial count")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out_path, "write the CSV report here instead of stdout");
  app.add_option("--tolerance", o.tolerance, "override the command's tolerance")->check(CLI::PositiveNumber);
  app.add_option("--l", o.l, "multiplicity of the first eigenvalue");
  app.add_option("--m", o.m, "multiplicity of the second eigenvalue");
  app.add_option("--x1", o.x1, "central part of the generator");
  app.add_option("--x2", o.x2, "traceless part of the generator");
  app.add_option("--L", o.L, "target length");

  auto* validate = app.add_subcommand("validate", "check a Randers spec against its inequalities");
  auto* solve = app.add_subcommand("solve", "closed-form (a, b, c) for orbit parameters");
  auto* verify = app.add_subcommand("verify", "Monte-Carlo and oracle checks");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* orbit = verify->add_subcommand("orbit", "F along the adjoint orbit of the two-eigenvalue generator");
  auto* sp_scan = verify->add_subcommand("sp-scan", "non-central diagonal candidates on an Sp spec with a2 != b");
  sp_scan->add_option("--candidates", o.candidates, "number of candidates")->check(CLI::PositiveNumber);
  auto* eigen = verify->add_subcommand("eigenlemma", "phase bounds for products of Haar unitaries");
  eigen->add_option("--n", o.n, "matrix size")->check(CLI::PositiveNumber);
  auto* comm = verify->add_subcommand("commutator", "eigenvalue 1 of exp(tX) U exp(-tX) U* across t");
  comm->add_option("--kind", o.kind, "singular | generic off-diagonal blocks");
  auto* disp = verify->add_subcommand("displacement", "oracle distance d(x, phi_t(x)) over sampled points");
  disp->add_option("--points", o.points, "graph vertices")->check(CLI::Range(500, 10000000));
  disp->add_option("--k", o.k, "nearest neighbours")->check(CLI::Range(8, 1000));
  disp->add_option("--samples", o.samples, "sampled vertices")->check(CLI::PositiveNumber);
  disp->add_option("--time", o.time, "flow time");
  auto* probe = verify->add_subcommand("probe", "no eigenvalue 1 in exp(t1 X1) exp(-t2 X2)");
  probe->add_option("--x", o.x, "central offset, 0 < |x| < 1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Runner run(o, out, err);
  try {
    if (validate->parsed()) return run.validate();
    if (solve->parsed()) return run.solve();
    if (orbit->parsed()) return run.verify_orbit();
    if (sp_scan->parsed()) return run.verify_sp_scan();
    if (eigen->parsed()) return run.verify_eigenlemma();
    if (comm->parsed()) return run.verify_commutator();
    if (disp->parsed()) return run.verify_displacement();
    if (probe->parsed()) return run.verify_probe();
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidInput ? kExitUsage : kExitFail;
  }
  err << "no command given\n";
  return kExitUsage;
}

}  // namespace randers
