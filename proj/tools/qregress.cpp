#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qregress/qrt.hpp"
#include "qregress/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qregress;

namespace {

struct RunResult {
  std::string csv;
  json report;
  bool pass = true;
  double headline = 0.0;
};

std::string csv_row(double t, const std::vector<double>& vals) {
  std::string row = format_float(t);
  for (double v : vals) row += "," + format_float(v);
  return row + "\n";
}

// time points for the varied (last) slot: grid if present, otherwise the
// single entry of `times` past the fixed ones
std::vector<double> varied_points(const ScenarioConfig& cfg, size_t fixed) {
  if (cfg.grid) {
    if (cfg.times.size() != fixed)
      throw PreconditionError("with a grid, times must hold exactly the fixed times");
    return cfg.grid->points();
  }
  if (cfg.times.size() != fixed + 1)
    throw PreconditionError("need a grid or one trailing time entry");
  return {cfg.times[fixed]};
}

void require_ops(const ScenarioConfig& cfg, size_t n) {
  if (cfg.operators.size() != n)
    throw PreconditionError("subcommand needs exactly " + std::to_string(n) +
                            " operators");
}

RunResult run_evolve(const ScenarioConfig& cfg) {
  require_ops(cfg, 1);
  auto model = cfg.make_model();
  std::vector<double> pts = cfg.grid ? cfg.grid->points() : cfg.times;
  if (pts.empty()) throw PreconditionError("evolve needs a grid or times");
  RunResult res;
  res.csv = "t,a00_re,a00_im,a01_re,a01_im,a10_re,a10_im,a11_re,a11_im\n";
  for (double t : pts) {
    Operator o = evolve_one_point(model, cfg.operators[0], t);
    std::vector<double> vals;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        vals.push_back(o(r, c).real());
        vals.push_back(o(r, c).imag());
      }
    res.csv += csv_row(t, vals);
    res.headline = max_abs(o);
  }
  res.report["rows"] = pts.size();
  return res;
}

RunResult run_corr(const ScenarioConfig& cfg) {
  if (cfg.operators.empty()) throw PreconditionError("corr needs operators");
  auto spec = cfg.make_coupling();
  const size_t n = cfg.operators.size();
  std::vector<double> pts = varied_points(cfg, n - 1);
  std::vector<double> times(cfg.times.begin(), cfg.times.begin() + (n - 1));
  times.push_back(0.0);
  RunResult res;
  res.csv = "t,value_re,value_im\n";
  for (double t : pts) {
    times.back() = t;
    cplx v = correlator(reduced_n_point(spec, cfg.operators, times), cfg.rho);
    res.csv += csv_row(t, {v.real(), v.imag()});
    res.headline = std::abs(v);
  }
  res.report["rows"] = pts.size();
  return res;
}

RunResult qrt_rows(const ScenarioConfig& cfg, size_t n_ops,
                   const std::string& tname) {
  require_ops(cfg, n_ops);
  auto spec = cfg.make_coupling();
  auto set = cfg.make_closed_set();
  std::vector<double> pts = varied_points(cfg, n_ops);
  QrtOptions opt;
  opt.h = cfg.h;
  opt.allow_non_maximal = true;
  RunResult res;
  res.csv = tname + ",residual,lhs_norm,rhs_norm\n";
  double worst = 0.0;
  for (double t : pts) {
    std::vector<double> times(cfg.times.begin(), cfg.times.begin() + n_ops);
    times.push_back(t);
    auto rep = qrt_n_point(spec, set, cfg.operators, cfg.mu,
                           static_cast<int>(n_ops), times, opt);
    res.csv += csv_row(t, {rep.residual, max_abs(rep.lhs), max_abs(rep.rhs)});
    worst = std::max(worst, rep.residual);
  }
  res.headline = worst;
  res.pass = worst <= cfg.residual_tol;
  res.report["rows"] = pts.size();
  res.report["worst_residual"] = worst;
  res.report["residual_tol"] = cfg.residual_tol;
  return res;
}

RunResult run_qrtn(const ScenarioConfig& cfg) {
  const size_t n = cfg.operators.size() + 1;
  if (cfg.operators.empty()) throw PreconditionError("qrtn needs operators");
  if (cfg.times.size() != n)
    throw PreconditionError("qrtn needs one time per slot");
  const int slot = cfg.slot < 0 ? static_cast<int>(n) - 1 : cfg.slot;
  if (slot < 0 || slot >= static_cast<int>(n))
    throw PreconditionError("slot out of range");
  auto spec = cfg.make_coupling();
  auto set = cfg.make_closed_set();
  std::vector<double> pts =
      cfg.grid ? cfg.grid->points() : std::vector<double>{cfg.times[slot]};
  QrtOptions opt;
  opt.h = cfg.h;
  opt.allow_non_maximal = true;
  RunResult res;
  res.csv = "t,residual,lhs_norm,rhs_norm\n";
  double worst = 0.0;
  for (double t : pts) {
    std::vector<double> times = cfg.times;
    times[slot] = t;
    auto rep = qrt_n_point(spec, set, cfg.operators, cfg.mu, slot, times, opt);
    res.csv += csv_row(t, {rep.residual, max_abs(rep.lhs), max_abs(rep.rhs)});
    worst = std::max(worst, rep.residual);
  }
  res.headline = worst;
  res.pass = worst <= cfg.residual_tol;
  res.report["rows"] = pts.size();
  res.report["worst_residual"] = worst;
  res.report["residual_tol"] = cfg.residual_tol;
  res.report["slot"] = slot;
  return res;
}

RunResult run_otoc(const ScenarioConfig& cfg) {
  require_ops(cfg, 2);
  if (cfg.times.empty()) throw PreconditionError("otoc needs times[0] = t1");
  auto spec = cfg.make_coupling();
  auto set = cfg.make_closed_set();
  const int nu = cfg.nu < 0 ? cfg.mu : cfg.nu;
  const double t1 = cfg.times[0];
  std::vector<double> pts = varied_points(cfg, 1);
  QrtOptions opt;
  opt.h = cfg.h;
  RunResult res;
  res.csv = "t2,residual,f_norm,lhs_norm,rhs_norm\n";
  double worst = 0.0;
  for (double t2 : pts) {
    auto rep = qrt_otoc(spec, set, set, cfg.operators[0], cfg.operators[1],
                        cfg.mu, nu, t1, t2, cfg.include_f_term, opt);
    double fn = max_abs(otoc_f_term(spec, cfg.operators[0], set.ops[cfg.mu],
                                    cfg.operators[1], set.ops[nu], t1, t2));
    res.csv +=
        csv_row(t2, {rep.residual, fn, max_abs(rep.lhs), max_abs(rep.rhs)});
    worst = std::max(worst, rep.residual);
  }
  res.headline = worst;
  res.pass = worst <= cfg.residual_tol;
  res.report["rows"] = pts.size();
  res.report["worst_residual"] = worst;
  res.report["residual_tol"] = cfg.residual_tol;
  res.report["include_f_term"] = cfg.include_f_term;
  return res;
}

RunResult run_nonmarkov(const ScenarioConfig& cfg) {
  require_ops(cfg, 1);
  if (cfg.times.empty()) throw PreconditionError("nonmarkov needs times[0] = t2");
  auto bath = cfg.make_bath_correlation();
  auto model = SystemModel::spin_boson(cfg.omega0, 0.0, 0.0);
  TimeDependentClosedSet set;
  if (cfg.closed_set_name == "xy")
    set = nonmarkov_closed_set_xy(model, bath);
  else if (cfg.closed_set_name == "zi")
    set = nonmarkov_closed_set_zi(model, bath);
  else
    throw PreconditionError("nonmarkov needs the 'xy' or 'zi' closed set");
  const double t2 = cfg.times[0];
  std::vector<double> pts = varied_points(cfg, 1);
  RunResult res;
  res.csv = "t1,residual_with,residual_without,main_norm,correction_norm\n";
  double worst = 0.0;
  for (double t1 : pts) {
    auto with = nonmarkov_qrt_report(bath, model, set, cfg.operators[0],
                                     cfg.mu, t1, t2, true, cfg.h);
    auto without = nonmarkov_qrt_report(bath, model, set, cfg.operators[0],
                                        cfg.mu, t1, t2, false, cfg.h);
    res.csv += csv_row(t1, {with.residual, without.residual, with.main_norm,
                            with.correction_norm});
    worst = std::max(worst, with.residual);
  }
  res.headline = worst;
  res.pass = worst <= cfg.residual_tol;
  res.report["rows"] = pts.size();
  res.report["worst_residual"] = worst;
  res.report["residual_tol"] = cfg.residual_tol;
  return res;
}

RunResult run_oracle_compare(const ScenarioConfig& cfg) {
  if (cfg.operators.empty())
    throw PreconditionError("oracle-compare needs operators");
  auto tb = cfg.make_truncated_bath();
  auto bare = SystemModel::spin_boson(cfg.omega0, 0.0, 0.0);
  Oracle oracle(bare, tb);
  auto spec = cfg.make_coupling();
  const size_t n = cfg.operators.size();
  std::vector<double> pts = varied_points(cfg, n - 1);
  std::vector<double> times(cfg.times.begin(), cfg.times.begin() + (n - 1));
  times.push_back(0.0);
  RunResult res;
  res.csv = "t,exact_re,exact_im,pert_re,pert_im,rel_gap\n";
  double worst = 0.0;
  for (double t : pts) {
    times.back() = t;
    cplx ex = oracle.correlator(cfg.operators, times, cfg.rho);
    cplx pt = correlator(reduced_n_point(spec, cfg.operators, times), cfg.rho);
    double gap = std::abs(ex - pt) / std::max(std::abs(ex), 1e-300);
    res.csv += csv_row(t, {ex.real(), ex.imag(), pt.real(), pt.imag(), gap});
    worst = std::max(worst, gap);
  }
  res.headline = worst;
  res.pass = worst <= cfg.rel_tol;
  res.report["rows"] = pts.size();
  res.report["worst_rel_gap"] = worst;
  res.report["rel_tol"] = cfg.rel_tol;
  return res;
}

RunResult dispatch(const std::string& sub, const ScenarioConfig& cfg);

void apply_sweep_param(ScenarioConfig& cfg, const std::string& name, double v) {
  if (name == "model.gamma") {
    cfg.gamma = v;
  } else if (name == "model.omega0") {
    cfg.omega0 = v;
  } else if (name == "model.delta") {
    cfg.delta = v;
  } else if (name == "h") {
    cfg.h = v;
  } else if (name.rfind("times.", 0) == 0) {
    const size_t i = std::stoul(name.substr(6));
    if (i >= cfg.times.size()) throw PreconditionError("sweep times index out of range");
    cfg.times[i] = v;
  } else {
    throw ParseError("unknown sweep parameter '" + name + "'");
  }
}

RunResult run_sweep(const ScenarioConfig& cfg, int jobs) {
  if (!cfg.sweep) throw PreconditionError("sweep needs a sweep block");
  const auto& sw = *cfg.sweep;
  if (sw.target == "sweep") throw PreconditionError("sweep cannot nest");
  const size_t n = sw.values.size();
  // validate eagerly on the first point so config errors surface before
  // threads start
  {
    ScenarioConfig probe = cfg;
    probe.sweep.reset();
    apply_sweep_param(probe, sw.parameter, sw.values.empty() ? 0.0 : sw.values[0]);
  }
  std::vector<RunResult> results(n);
  std::vector<std::string> errors(n);
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = w; i < n; i += workers) {
        try {
          ScenarioConfig local = cfg;
          local.sweep.reset();
          apply_sweep_param(local, sw.parameter, sw.values[i]);
          results[i] = dispatch(sw.target, local);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw PreconditionError("sweep point failed: " + e);

  RunResult res;
  res.csv = "parameter,value\n";
  bool pass = true;
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    res.csv += format_float(sw.values[i]) + "," +
               format_float(results[i].headline) + "\n";
    pass = pass && results[i].pass;
    worst = std::max(worst, results[i].headline);
  }
  res.pass = pass;
  res.headline = worst;
  res.report["rows"] = n;
  res.report["target"] = sw.target;
  res.report["parameter"] = sw.parameter;
  res.report["worst_value"] = worst;
  return res;
}

RunResult dispatch(const std::string& sub, const ScenarioConfig& cfg) {
  if (sub == "evolve") return run_evolve(cfg);
  if (sub == "corr") return run_corr(cfg);
  if (sub == "qrt2") return qrt_rows(cfg, 1, "t2");
  if (sub == "qrt3") return qrt_rows(cfg, 2, "t3");
  if (sub == "qrt4") return qrt_rows(cfg, 3, "t4");
  if (sub == "qrtn") return run_qrtn(cfg);
  if (sub == "otoc") return run_otoc(cfg);
  if (sub == "nonmarkov") return run_nonmarkov(cfg);
  if (sub == "oracle-compare") return run_oracle_compare(cfg);
  throw ParseError("unknown subcommand '" + sub + "'");
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + p.string());
  out << content;
}

void emit_error(const char* kind, const std::string& detail) {
  json err = {{"error", kind}, {"detail", detail}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-picture regression checks for a dissipative qubit"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h / --h for the step size

  std::string config_path, out_dir;
  int jobs = 1;
  double h_override = -1.0;
  long long seed = 0;

  const char* subs[] = {"evolve", "corr",      "qrt2",          "qrt3",
                        "qrt4",   "qrtn",      "otoc",          "nonmarkov",
                        "oracle-compare",      "sweep"};
  for (const char* name : subs) {
    auto* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", config_path, "scenario config (json)")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "parallel sweep workers");
    sub->add_option("--h", h_override, "finite-difference step override");
    sub->add_option("--seed", seed, "reserved; echoed in reports");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("parse", e.what());
    return 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    ScenarioConfig cfg = load_scenario(config_path);
    if (h_override > 0.0) cfg.h = h_override;

    if (out_dir.empty()) {
      if (const char* env = std::getenv("QREGRESS_OUT")) out_dir = env;
      if (out_dir.empty()) out_dir = ".";
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "resolved_config.json", cfg.resolved_json());

    RunResult res = sub == "sweep" ? run_sweep(cfg, jobs) : dispatch(sub, cfg);

    res.report["subcommand"] = sub;
    res.report["pass"] = res.pass;
    res.report["seed"] = seed;
    write_file(fs::path(out_dir) / (sub + ".csv"), res.csv);
    write_file(fs::path(out_dir) / (sub + ".json"), res.report.dump(2) + "\n");

    if (!res.pass) {
      emit_error("threshold", "headline value exceeds configured tolerance");
      return 1;
    }
    return 0;
  } catch (const ParseError& e) {
    emit_error("parse", e.what());
    return 2;
  } catch (const PreconditionError& e) {
    emit_error("precondition", e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error("precondition", e.what());
    return 3;
  }
}
