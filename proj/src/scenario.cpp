#include "qregress/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qregress {

namespace {

using nlohmann::json;

Operator named_operator(const std::string& name) {
  if (name == "sigma_x") return pauli(Pauli::X);
  if (name == "sigma_y") return pauli(Pauli::Y);
  if (name == "sigma_z") return pauli(Pauli::Z);
  if (name == "sigma_p") return pauli(Pauli::Plus);
  if (name == "sigma_m") return pauli(Pauli::Minus);
  if (name == "identity") return Operator::identity(2);
  throw ParseError("unknown operator name '" + name + "'");
}

cplx parse_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Operator parse_operator(const json& j) {
  if (j.is_string()) return named_operator(j.get<std::string>());
  if (!j.is_array() || j.size() != 2)
    throw ParseError("explicit operators must be 2x2 arrays of [re, im]");
  Operator o(2);
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2)
      throw ParseError("explicit operators must be 2x2 arrays of [re, im]");
    for (int c = 0; c < 2; ++c) o(r, c) = parse_cplx(j[r][c]);
  }
  return o;
}

Operator parse_rho(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    Operator rho(2);
    if (name == "excited") {
      rho(0, 0) = 1.0;
    } else if (name == "ground") {
      rho(1, 1) = 1.0;
    } else if (name == "mixed") {
      rho(0, 0) = rho(1, 1) = 0.5;
    } else if (name == "plus") {
      rho(0, 0) = rho(0, 1) = rho(1, 0) = rho(1, 1) = 0.5;
    } else {
      throw ParseError("unknown rho preset '" + name + "'");
    }
    return rho;
  }
  return parse_operator(j);
}

json dump_operator(const Operator& o) {
  json j = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c)
      row.push_back(json::array({o(r, c).real(), o(r, c).imag()}));
    j.push_back(row);
  }
  return j;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError("unknown key '" + it.key() + "' in " + where);
  }
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ParseError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

}  // namespace

std::vector<double> TimeGrid::points() const {
  std::vector<double> p;
  if (count == 1) {
    p.push_back(start);
    return p;
  }
  for (int i = 0; i < count; ++i)
    p.push_back(start + (stop - start) * i / (count - 1));
  return p;
}

SystemModel ScenarioConfig::make_model() const {
  double d = delta;
  if (lamb_shift_from_bath)
    d = lamb_shift_sum(make_bath_correlation(), omega0);
  return SystemModel::spin_boson(omega0, d, gamma);
}

CouplingSpec ScenarioConfig::make_coupling() const {
  return CouplingSpec::spin_boson(make_model());
}

ClosedSet ScenarioConfig::make_closed_set() const {
  if (closed_set_name == "zi") return closed_set_zi(make_model());
  if (closed_set_name == "xy") return closed_set_xy(make_model());
  if (explicit_set) return *explicit_set;
  throw PreconditionError("no closed set in scenario");
}

BathCorrelation ScenarioConfig::make_bath_correlation() const {
  if (!bath_modes) throw PreconditionError("scenario has no bath");
  BathCorrelation bc;
  for (const auto& [w, g] : *bath_modes) bc.modes.emplace_back(w, cplx{g, 0.0});
  return bc;
}

TruncatedBath ScenarioConfig::make_truncated_bath() const {
  if (!bath_modes) throw PreconditionError("scenario has no bath");
  TruncatedBath tb;
  tb.modes = *bath_modes;
  tb.fock_cutoff = fock_cutoff;
  if (tb.dim() > 4096)
    throw PreconditionError("truncated bath dimension exceeds 4096");
  return tb;
}

ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  check_keys(j,
             {"model", "operators", "times", "closed_set", "rho", "mu", "nu",
              "slot", "include_f_term", "bath", "tolerances", "grid", "sweep"},
             "scenario");

  ScenarioConfig cfg;
  cfg.rho = Operator(2);
  cfg.rho(0, 0) = 1.0;

  if (j.contains("model")) {
    const json& m = j["model"];
    check_keys(m, {"omega0", "delta", "gamma", "lamb_shift_from_bath"},
               "model");
    cfg.omega0 = get_num(m, "omega0", cfg.omega0);
    cfg.delta = get_num(m, "delta", cfg.delta);
    cfg.gamma = get_num(m, "gamma", cfg.gamma);
    if (m.contains("lamb_shift_from_bath"))
      cfg.lamb_shift_from_bath = m["lamb_shift_from_bath"].get<bool>();
  }
  if (j.contains("operators")) {
    if (!j["operators"].is_array())
      throw ParseError("operators must be an array");
    for (const auto& o : j["operators"])
      cfg.operators.push_back(parse_operator(o));
  }
  if (j.contains("times")) {
    if (!j["times"].is_array()) throw ParseError("times must be an array");
    for (const auto& t : j["times"]) {
      if (!t.is_number()) throw ParseError("times must be numbers");
      cfg.times.push_back(t.get<double>());
    }
  }
  if (j.contains("closed_set")) {
    const json& cs = j["closed_set"];
    if (cs.is_string()) {
      cfg.closed_set_name = cs.get<std::string>();
      if (cfg.closed_set_name != "zi" && cfg.closed_set_name != "xy")
        throw ParseError("closed_set preset must be 'zi' or 'xy'");
    } else if (cs.is_object()) {
      check_keys(cs, {"ops", "m"}, "closed_set");
      if (!cs.contains("ops") || !cs.contains("m"))
        throw ParseError("explicit closed_set needs 'ops' and 'm'");
      ClosedSet set;
      for (const auto& o : cs["ops"]) set.ops.push_back(parse_operator(o));
      for (const auto& row : cs["m"]) {
        std::vector<cplx> r;
        for (const auto& e : row) r.push_back(parse_cplx(e));
        set.m.push_back(std::move(r));
      }
      if (set.m.size() != set.ops.size())
        throw ParseError("closed_set m must be square over ops");
      for (const auto& row : set.m)
        if (row.size() != set.ops.size())
          throw ParseError("closed_set m must be square over ops");
      cfg.closed_set_name.clear();
      cfg.explicit_set = std::move(set);
    } else {
      throw ParseError("closed_set must be a preset name or object");
    }
  }
  if (j.contains("rho")) cfg.rho = parse_rho(j["rho"]);
  if (j.contains("mu")) cfg.mu = j["mu"].get<int>();
  if (j.contains("nu")) cfg.nu = j["nu"].get<int>();
  if (j.contains("slot")) cfg.slot = j["slot"].get<int>();
  if (j.contains("include_f_term"))
    cfg.include_f_term = j["include_f_term"].get<bool>();

  if (j.contains("bath")) {
    const json& b = j["bath"];
    check_keys(b, {"modes", "k", "bandwidth", "gamma_target", "fock_cutoff"},
               "bath");
    std::vector<std::pair<double, double>> modes;
    if (b.contains("modes")) {
      for (const auto& m : b["modes"]) {
        if (!m.is_array() || m.size() != 2)
          throw ParseError("bath modes must be [omega, g] pairs");
        modes.emplace_back(m[0].get<double>(), m[1].get<double>());
      }
    } else {
      if (!b.contains("k") || !b.contains("bandwidth") ||
          !b.contains("gamma_target"))
        throw ParseError("bath generator needs k, bandwidth, gamma_target");
      const int k = b["k"].get<int>();
      const double bw = b["bandwidth"].get<double>();
      const double gt = b["gamma_target"].get<double>();
      if (k < 1 || bw <= 0.0 || gt <= 0.0)
        throw PreconditionError("bath generator parameters must be positive");
      auto gen = TruncatedBath::flat_band(
          j.contains("model") ? get_num(j["model"], "omega0", 1.0) : 1.0, gt,
          bw, k, 1);
      modes = gen.modes;
    }
    cfg.bath_modes = std::move(modes);
    if (b.contains("fock_cutoff")) cfg.fock_cutoff = b["fock_cutoff"].get<int>();
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, {"h", "residual", "rel"}, "tolerances");
    cfg.h = get_num(t, "h", cfg.h);
    cfg.residual_tol = get_num(t, "residual", cfg.residual_tol);
    cfg.rel_tol = get_num(t, "rel", cfg.rel_tol);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, {"start", "stop", "count"}, "grid");
    TimeGrid tg;
    tg.start = get_num(g, "start", 0.0);
    tg.stop = get_num(g, "stop", 0.0);
    tg.count = g.contains("count") ? g["count"].get<int>() : 0;
    if (tg.count < 1) throw PreconditionError("grid count must be >= 1");
    cfg.grid = tg;
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, {"target", "parameter", "values", "start", "stop", "count"},
               "sweep");
    SweepSpec sw;
    if (!s.contains("target") || !s.contains("parameter"))
      throw ParseError("sweep needs target and parameter");
    sw.target = s["target"].get<std::string>();
    sw.parameter = s["parameter"].get<std::string>();
    if (s.contains("values")) {
      for (const auto& v : s["values"]) sw.values.push_back(v.get<double>());
    } else {
      TimeGrid tg;
      tg.start = get_num(s, "start", 0.0);
      tg.stop = get_num(s, "stop", 0.0);
      tg.count = s.contains("count") ? s["count"].get<int>() : 0;
      if (tg.count < 1)
        throw PreconditionError("sweep needs values or start/stop/count");
      sw.values = tg.points();
    }
    cfg.sweep = std::move(sw);
  }

  for (double t : cfg.times)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw PreconditionError("times must be nonnegative and finite");
  if (cfg.gamma < 0.0) throw PreconditionError("gamma must be nonnegative");
  if (!is_hermitian(cfg.rho, 1e-10) || std::abs(cfg.rho.trace() - 1.0) > 1e-10)
    throw PreconditionError("rho is not a density matrix");
  cplx det = cfg.rho(0, 0) * cfg.rho(1, 1) - cfg.rho(0, 1) * cfg.rho(1, 0);
  if (cfg.rho(0, 0).real() < -1e-10 || det.real() < -1e-10)
    throw PreconditionError("rho is not positive semidefinite");
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string ScenarioConfig::resolved_json() const {
  json j;
  j["model"] = {{"omega0", omega0},
                {"delta", delta},
                {"gamma", gamma},
                {"lamb_shift_from_bath", lamb_shift_from_bath}};
  j["operators"] = json::array();
  for (const auto& o : operators) j["operators"].push_back(dump_operator(o));
  j["times"] = times;
  {
    ClosedSet set = make_closed_set();
    json cs;
    cs["ops"] = json::array();
    for (const auto& o : set.ops) cs["ops"].push_back(dump_operator(o));
    cs["m"] = json::array();
    for (const auto& row : set.m) {
      json r = json::array();
      for (const auto& e : row)
        r.push_back(json::array({e.real(), e.imag()}));
      cs["m"].push_back(r);
    }
    j["closed_set"] = cs;
  }
  j["rho"] = dump_operator(rho);
  j["mu"] = mu;
  j["nu"] = nu;
  j["slot"] = slot;
  j["include_f_term"] = include_f_term;
  if (bath_modes) {
    json b;
    b["modes"] = json::array();
    for (const auto& [w, g] : *bath_modes)
      b["modes"].push_back(json::array({w, g}));
    b["fock_cutoff"] = fock_cutoff;
    j["bath"] = b;
  }
  j["tolerances"] = {{"h", h}, {"residual", residual_tol}, {"rel", rel_tol}};
  if (grid)
    j["grid"] = {{"start", grid->start},
                 {"stop", grid->stop},
                 {"count", grid->count}};
  if (sweep) {
    j["sweep"] = {{"target", sweep->target},
                  {"parameter", sweep->parameter},
                  {"values", sweep->values}};
  }
  return j.dump(2) + "\n";
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace qregress
