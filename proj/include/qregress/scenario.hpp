#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qregress/correlators.hpp"
#include "qregress/nonmarkov.hpp"
#include "qregress/oracle.hpp"

namespace qregress {

/// Config file unreadable or malformed (CLI exit 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Config parsed but violates a precondition (CLI exit 3).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;  // inclusive endpoints

  std::vector<double> points() const;
};

struct SweepSpec {
  std::string target;     // subcommand whose headline scalar is swept
  std::string parameter;  // model.gamma | model.omega0 | model.delta | h | times.<i>
  std::vector<double> values;
};

/// Declarative scenario: JSON file with named presets for operators, density
/// matrices, closed sets and baths. All presets expand to explicit form in
/// resolved_json(); the expanded file parses back to an identical scenario.
struct ScenarioConfig {
  double omega0 = 1.0;
  double delta = 0.0;
  double gamma = 0.01;
  bool lamb_shift_from_bath = false;

  std::vector<Operator> operators;
  std::vector<double> times;
  std::string closed_set_name = "xy";        // empty when explicit
  std::optional<ClosedSet> explicit_set;
  Operator rho;
  int mu = 0;
  int nu = -1;    // -1: same as mu (second OTOC insertion)
  int slot = -1;  // -1: last slot
  bool include_f_term = true;

  std::optional<std::vector<std::pair<double, double>>> bath_modes;
  int fock_cutoff = 1;

  double h = 1e-4;
  double residual_tol = 1e-6;
  double rel_tol = 0.1;

  std::optional<TimeGrid> grid;
  std::optional<SweepSpec> sweep;

  SystemModel make_model() const;
  CouplingSpec make_coupling() const;
  ClosedSet make_closed_set() const;
  BathCorrelation make_bath_correlation() const;
  TruncatedBath make_truncated_bath() const;

  std::string resolved_json() const;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

/// 17 significant digits, scientific notation; the fixed CSV float format.
std::string format_float(double v);

}  // namespace qregress
