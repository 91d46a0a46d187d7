// parapres - parallel/TEA pair geometry and preserver classification for
// operators on l1^n / linf^n, with JSON I/O and machine-readable exit codes.
//
// Exit codes: 0 = check passed / verdict positive, 1 = verdict negative
// (report carries a witness), 2 = usage or input error (single-line
// diagnostic on stderr). Every 0/1 path prints a JSON report on stdout.
//
// The default seed is 0x5EED; the PARAPRES_SEED environment variable
// overrides it and the --seed flag wins over both.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "parapres/json_io.hpp"

namespace pp = parapres;
using pp::io::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EED;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("PARAPRES_SEED")) return std::strtoull(s, nullptr, 0);
  return kDefaultSeed;
}

struct CommonOpts {
  std::string field;        // "", "real", "complex"
  std::string mode;         // "", "exact", "float"
  double norm_tol = 1e-9;
  double phase_tol = 1e-9;
  double rank_tol = 1e-9;
  std::uint64_t seed = env_seed();
  int jobs = 0;
  bool serial = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed = true) {
  cmd->add_option("--field", o.field, "scalar field: real | complex")->check(CLI::IsMember({"real", "complex"}));
  cmd->add_option("--mode", o.mode, "arithmetic: exact | float")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--norm-tol", o.norm_tol, "relative norm tolerance (float mode)");
  cmd->add_option("--phase-tol", o.phase_tol, "angular phase tolerance, radians (float mode)");
  cmd->add_option("--rank-tol", o.rank_tol, "relative singular-value cutoff (float mode)");
  if (with_seed) cmd->add_option("--seed", o.seed, "RNG seed (default 0x5EED, env PARAPRES_SEED)");
  cmd->add_option("--jobs", o.jobs, "worker threads (default: machine parallelism)");
  cmd->add_flag("--serial", o.serial, "force the serial reference path");
  cmd->add_option("--out", o.out_path, "also write the JSON report to this file");
}

// Resolve field/mode: explicit flags win; otherwise field comes from the
// input files and exact mode is the real-field default.
pp::ScalarConfig resolve_config(const CommonOpts& o, pp::Field file_field) {
  pp::ScalarConfig cfg;
  if (!o.field.empty()) {
    cfg.field = pp::io::field_from_tag(o.field);
    if (cfg.field == pp::Field::Real && file_field == pp::Field::Complex)
      throw std::invalid_argument("input data is complex but --field real was requested");
  } else {
    cfg.field = file_field;
  }
  cfg.mode = o.mode.empty() ? (cfg.field == pp::Field::Real ? pp::Mode::ExactRational : pp::Mode::Float)
                            : (o.mode == "exact" ? pp::Mode::ExactRational : pp::Mode::Float);
  cfg.norm_tol = o.norm_tol;
  cfg.phase_tol = o.phase_tol;
  cfg.rank_tol = o.rank_tol;
  cfg.validate();
  return cfg;
}

pp::ExecPolicy exec_policy(const CommonOpts& o) { return pp::ExecPolicy{!o.serial, o.jobs}; }

json config_echo(const pp::ScalarConfig& cfg, const CommonOpts& o) {
  return json{{"field", pp::io::field_tag(cfg.field)},
              {"mode", cfg.mode == pp::Mode::ExactRational ? "exact" : "float"},
              {"norm_tol", cfg.norm_tol},
              {"phase_tol", cfg.phase_tol},
              {"rank_tol", cfg.rank_tol},
              {"seed", o.seed},
              {"jobs", o.jobs}};
}

int emit(const json& report, const CommonOpts& o, bool positive) {
  const std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw std::invalid_argument("cannot write '" + o.out_path + "'");
    f << text << "\n";
  }
  return positive ? 0 : 1;
}

pp::Pnorm parse_p(const std::string& s) {
  if (s == "1") return pp::Pnorm::P1;
  if (s == "inf") return pp::Pnorm::PInf;
  throw std::invalid_argument("--p must be 1 or inf");
}

// Typed dispatch over the two scalar backends.
template <class Fn>
int dispatch(const pp::ScalarConfig& cfg, Fn&& fn) {
  if (cfg.mode == pp::Mode::ExactRational) return fn(static_cast<const pp::Rational*>(nullptr), cfg);
  return fn(static_cast<const pp::CD*>(nullptr), cfg);
}

pp::Field field_of_files(std::initializer_list<const json*> files) {
  pp::Field f = pp::Field::Real;
  for (const json* j : files)
    if (pp::io::detect_field(*j) == pp::Field::Complex) f = pp::Field::Complex;
  return f;
}

// --- subcommand bodies -------------------------------------------------------

int run_norm(const std::string& path, const std::string& p_str, const CommonOpts& o) {
  const json j = pp::io::read_json_file(path);
  const auto cfg = resolve_config(o, pp::io::detect_field(j));
  const auto kind = pp::io::detect_kind(j);
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    json rep{{"config", config_echo(c, o)}, {"input", path}};
    if (kind == pp::io::FileKind::Vector) {
      const auto v = pp::io::vec_from_json<S>(j);
      const auto p = parse_p(p_str);
      rep["kind"] = "vector";
      rep["p"] = pp::io::pnorm_to_json(p);
      rep["norm"] = pp::io::mag_to_json(pp::vec_norm(v, p));
    } else if (kind == pp::io::FileKind::Operator) {
      const auto a = pp::io::op_from_json<S>(j);
      rep["kind"] = "operator";
      rep["p"] = pp::io::pnorm_to_json(a.p());
      rep["norm"] = pp::io::mag_to_json(pp::op_norm(a));
    } else {
      throw std::invalid_argument("norm expects a vector or operator file");
    }
    return emit(rep, o, true);
  });
}

int run_check_pair(const std::string& path_a, const std::string& path_b, const std::string& p_str, bool tea,
                   const CommonOpts& o) {
  const json ja = pp::io::read_json_file(path_a);
  const json jb = pp::io::read_json_file(path_b);
  const auto kind = pp::io::detect_kind(ja);
  if (kind != pp::io::detect_kind(jb))
    throw std::invalid_argument("both inputs must be of the same kind (vector or operator)");
  const auto cfg = resolve_config(o, field_of_files({&ja, &jb}));
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    json rep{{"config", config_echo(c, o)}, {"check", tea ? "tea" : "parallel"},
             {"inputs", json::array({path_a, path_b})}};
    bool holds = false;
    if (kind == pp::io::FileKind::Vector) {
      const auto x = pp::io::vec_from_json<S>(ja);
      const auto y = pp::io::vec_from_json<S>(jb);
      const auto p = parse_p(p_str);
      const auto ps = pp::feasible_phases(x, y, p, c);
      holds = tea ? ps.contains_one(c) : ps.nonempty();
      rep["kind"] = "vector";
      rep["p"] = pp::io::pnorm_to_json(p);
      rep["phase_set"] = pp::io::to_json(ps, c);
    } else if (kind == pp::io::FileKind::Operator) {
      const auto a = pp::io::op_from_json<S>(ja);
      const auto b = pp::io::op_from_json<S>(jb);
      const auto phases = pp::op_feasible_phases(a, b, c);
      const auto verdict = tea ? pp::op_tea(a, b, c) : pp::op_parallel(a, b, c);
      holds = verdict.holds;
      rep["kind"] = "operator";
      rep["p"] = pp::io::pnorm_to_json(a.p());
      rep["phase_set"] = pp::io::to_json(phases.set, c);
      rep["witness"] = verdict.witness ? pp::io::to_json(*verdict.witness, c, a.p()) : json(nullptr);
      if (!holds) {
        const bool no_shared = phases.witnesses.empty() && phases.set.kind == pp::PhaseSet<S>::Kind::Empty;
        rep["reason"] = !verdict.holds && no_shared ? "no shared norming column"
                        : (tea && phases.set.nonempty() ? "parallel but no alignment at phase 1"
                                                        : "phase demands conflict on shared norming columns");
      }
    } else {
      throw std::invalid_argument("check expects vector or operator files");
    }
    rep["holds"] = holds;
    return emit(rep, o, holds);
  });
}

int run_check_unary(const std::string& path, const std::string& p_str, bool smooth, const CommonOpts& o) {
  const json j = pp::io::read_json_file(path);
  const auto cfg = resolve_config(o, pp::io::detect_field(j));
  const auto kind = pp::io::detect_kind(j);
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    json rep{{"config", config_echo(c, o)}, {"check", smooth ? "smooth" : "extreme"}, {"input", path}};
    bool holds = false;
    if (kind == pp::io::FileKind::Vector) {
      const auto x = pp::io::vec_from_json<S>(j);
      const auto p = parse_p(p_str);
      holds = smooth ? pp::is_smooth_point(x, p, c) : pp::is_extreme_point(x, p, c);
      rep["kind"] = "vector";
      rep["p"] = pp::io::pnorm_to_json(p);
    } else if (kind == pp::io::FileKind::Operator) {
      const auto a = pp::io::op_from_json<S>(j);
      holds = smooth ? pp::is_smooth_operator(a, c) : pp::is_extreme_contraction(a, c);
      rep["kind"] = "operator";
      rep["p"] = pp::io::pnorm_to_json(a.p());
    } else {
      throw std::invalid_argument("check expects a vector or operator file");
    }
    rep["holds"] = holds;
    return emit(rep, o, holds);
  });
}

int run_enumerate(int m, int n, const std::string& p_str, long long budget, const CommonOpts& o) {
  CommonOpts opts = o;
  if (opts.field.empty()) opts.field = "real";
  const auto cfg = resolve_config(opts, pp::Field::Real);
  const auto p = parse_p(p_str);
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    const auto all = pp::enumerate_extreme_contractions<S>(m, n, p, c, budget);
    json ops = json::array();
    for (const auto& s : all) ops.push_back(pp::io::to_json(s, c));
    json rep{{"config", config_echo(c, o)}, {"m", m},          {"n", n}, {"p", pp::io::pnorm_to_json(p)},
             {"count", all.size()},         {"operators", ops}};
    return emit(rep, o, true);
  });
}

int run_classify(const std::string& path, long long trials, long long samples, const CommonOpts& o) {
  const json j = pp::io::read_json_file(path);
  if (pp::io::detect_kind(j) != pp::io::FileKind::Preserver)
    throw std::invalid_argument("classify expects a preserver-map file (with \"matrix\")");
  const auto cfg = resolve_config(o, pp::io::detect_field(j));
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    const auto t = pp::io::preserver_from_json<S>(j);
    pp::ClassifyOptions opt{trials, samples, o.seed};
    const auto rec = pp::classify(t, opt, c, exec_policy(o));
    json rep{{"config", config_echo(c, o)}, {"input", path}, {"classification", pp::io::to_json(rec, c)}};
    return emit(rep, o, rec.theorem_consistent);
  });
}

int run_mine(pp::MinerConfig mc, const std::string& p_str, const CommonOpts& o) {
  CommonOpts opts = o;
  if (opts.field.empty()) opts.field = "real";
  const auto cfg = resolve_config(opts, pp::Field::Real);
  mc.p = parse_p(p_str);
  mc.seed = o.seed;
  return dispatch(cfg, [&]<class S>(const S*, const pp::ScalarConfig& c) {
    const auto rep = pp::mine<S>(mc, c, exec_policy(o));
    json out{{"config", config_echo(c, o)}, {"report", pp::io::to_json(rep, c)}};
    return emit(out, o, rep.inconsistent == 0);
  });
}

int run_verify(pp::VerifyConfig vc, const CommonOpts& o) {
  vc.exec = exec_policy(o);
  vc.seed = o.seed;
  if (!o.field.empty()) vc.field = pp::io::field_from_tag(o.field);
  if (!o.mode.empty()) vc.mode = o.mode == "exact" ? pp::Mode::ExactRational : pp::Mode::Float;
  const auto rep = pp::verify_theorem(vc);
  json out = pp::io::to_json(rep);
  out["config"]["jobs"] = o.jobs;
  return emit(out, o, rep.all_passed);
}

int run_paper_example(long long trials, const CommonOpts& o) {
  const auto rep = pp::builtin_rank_one_example(trials, o.seed);
  json out{{"config", config_echo(pp::ScalarConfig::exact_real(), o)}, {"report", pp::io::to_json(rep)}};
  return emit(out, o, rep.all_match);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact geometry of parallel/TEA pairs and preserver maps on L(l_p^n, l_p^m), p in {1, inf}"};
  app.require_subcommand(1);
  app.footer(
      "input file forms (JSON):\n"
      "  vector    {\"field\":\"real\"|\"complex\",\"data\":[s,...]}\n"
      "  operator  {\"m\":M,\"n\":N,\"p\":1|\"inf\",\"field\":...,\"data\":[[row],...]}\n"
      "  preserver {\"m\":M,\"n\":N,\"p\":...,\"field\":...,\"vec\":\"col-major\",\"matrix\":[[row],...]}\n"
      "scalars: integers, \"p/q\" strings (exact), numbers (float), [re,im] (complex)\n"
      "exit codes: 0 verdict positive, 1 verdict negative (witness in report), 2 usage/input error");

  CommonOpts o;
  std::string path_a, path_b, p_str = "1";
  int m = 2, n = 2;
  long long budget = 1 << 20;
  long long trials = 10000, samples = 1000;

  auto* norm = app.add_subcommand("norm", "operator or vector norm");
  norm->add_option("input", path_a, "JSON file")->required();
  norm->add_option("--p", p_str, "norm index for vectors: 1 | inf");
  add_common(norm, o, false);

  auto* cpar = app.add_subcommand("check-parallel", "decide parallelism with witness");
  cpar->add_option("a", path_a, "first JSON file")->required();
  cpar->add_option("b", path_b, "second JSON file")->required();
  cpar->add_option("--p", p_str, "norm index for vectors: 1 | inf");
  add_common(cpar, o, false);

  auto* ctea = app.add_subcommand("check-tea", "decide triangle equality attainment with witness");
  ctea->add_option("a", path_a, "first JSON file")->required();
  ctea->add_option("b", path_b, "second JSON file")->required();
  ctea->add_option("--p", p_str, "norm index for vectors: 1 | inf");
  add_common(ctea, o, false);

  auto* cext = app.add_subcommand("check-extreme", "extreme point / extreme contraction test");
  cext->add_option("input", path_a, "JSON file")->required();
  cext->add_option("--p", p_str, "norm index for vectors: 1 | inf");
  add_common(cext, o, false);

  auto* csm = app.add_subcommand("check-smooth", "smooth point / smooth operator test");
  csm->add_option("input", path_a, "JSON file")->required();
  csm->add_option("--p", p_str, "norm index for vectors: 1 | inf");
  add_common(csm, o, false);

  auto* enu = app.add_subcommand("enumerate-extremes", "enumerate all real extreme contractions");
  enu->add_option("--m", m, "rows")->required();
  enu->add_option("--n", n, "columns")->required();
  enu->add_option("--p", p_str, "norm index: 1 | inf");
  enu->add_option("--budget", budget, "max enumeration size");
  add_common(enu, o, false);

  auto* cls = app.add_subcommand("classify", "classify a preserver map against the equivalence");
  cls->add_option("input", path_a, "preserver JSON file")->required();
  cls->add_option("--trials", trials, "preservation trials per suite");
  cls->add_option("--samples", samples, "isometry samples");
  add_common(cls, o);

  pp::MinerConfig mc;
  std::string family = "random-dense";
  auto* mine_cmd = app.add_subcommand("mine", "mine candidate maps for equivalence violations");
  mine_cmd->add_option("--m", mc.m, "rows");
  mine_cmd->add_option("--n", mc.n, "columns");
  mine_cmd->add_option("--p", p_str, "norm index: 1 | inf");
  mine_cmd->add_option("--family", family, "random-dense | random-rank1 | isometry-perturbation")
      ->check(CLI::IsMember({"random-dense", "random-rank1", "isometry-perturbation"}));
  mine_cmd->add_option("--epsilon", mc.epsilon, "perturbation size (isometry-perturbation)");
  mine_cmd->add_option("--candidates", mc.candidates, "number of candidate maps");
  mine_cmd->add_option("--trials", mc.trials, "preservation trials per candidate");
  mine_cmd->add_option("--samples", mc.samples, "isometry samples per candidate");
  add_common(mine_cmd, o);

  pp::VerifyConfig vc;
  auto* ver = app.add_subcommand("verify-theorem", "run the aggregated verification battery");
  ver->add_option("--m", vc.m, "rows for unpinned items");
  ver->add_option("--n", vc.n, "columns for unpinned items");
  ver->add_option("--budget", vc.budget_scale, "budget scale (default 1.0; 0 skips all items)");
  ver->add_option("--only", vc.only_item, "run a single numbered item");
  add_common(ver, o);

  long long example_trials = 1000;
  auto* pex = app.add_subcommand("paper-example", "reproduce the built-in rank-one worked example");
  pex->add_option("--trials", example_trials, "parallel-preservation sample size");
  add_common(pex, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*norm) return run_norm(path_a, p_str, o);
    if (*cpar) return run_check_pair(path_a, path_b, p_str, false, o);
    if (*ctea) return run_check_pair(path_a, path_b, p_str, true, o);
    if (*cext) return run_check_unary(path_a, p_str, false, o);
    if (*csm) return run_check_unary(path_a, p_str, true, o);
    if (*enu) return run_enumerate(m, n, p_str, budget, o);
    if (*cls) return run_classify(path_a, trials, samples, o);
    if (*mine_cmd) {
      if (family == "random-rank1") mc.family = pp::CandidateFamily::RandomRank1;
      else if (family == "isometry-perturbation") mc.family = pp::CandidateFamily::IsometryPerturbation;
      else mc.family = pp::CandidateFamily::RandomDense;
      return run_mine(mc, p_str, o);
    }
    if (*ver) return run_verify(vc, o);
    if (*pex) return run_paper_example(example_trials, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
