#include "doctest.h"
#include "qregress/scenario.hpp"

using namespace qregress;

TEST_CASE("presets expand to the expected objects") {
  auto cfg = parse_scenario(R"({
    "model": {"omega0": 1.0, "delta": 0.1, "gamma": 0.02},
    "operators": ["sigma_x", [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]],
    "times": [0.5, 1.5],
    "closed_set": "zi",
    "rho": "plus"
  })");
  CHECK(cfg.operators.size() == 2);
  CHECK(max_abs_diff(cfg.operators[0], pauli(Pauli::X)) <= 1e-15);
  CHECK(max_abs_diff(cfg.operators[1], pauli(Pauli::Plus)) <= 1e-15);
  CHECK(std::abs(cfg.rho(0, 1) - 0.5) <= 1e-15);
  auto model = cfg.make_model();
  CHECK(model.omega0_prime() == doctest::Approx(1.1));
  CHECK(cfg.make_closed_set().ops.size() == 2);
}

TEST_CASE("parse and precondition failures are distinguished") {
  CHECK_THROWS_AS(parse_scenario("{nope"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"unknown_key": 1})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"operators": ["sigma_q"]})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"times": [-1.0]})"), PreconditionError);
  CHECK_THROWS_AS(parse_scenario(R"({"rho": [[[0.9, 0.0], [0.0, 0.0]],
      [[0.0, 0.0], [0.0, 0.0]]]})"),
                  PreconditionError);
}

TEST_CASE("grid points include both endpoints") {
  TimeGrid g;
  g.start = 1.0;
  g.stop = 3.0;
  g.count = 5;
  auto p = g.points();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == doctest::Approx(1.0));
  CHECK(p.back() == doctest::Approx(3.0));
  CHECK(p[2] == doctest::Approx(2.0));
}

TEST_CASE("bath generator expands and bounds apply") {
  auto cfg = parse_scenario(R"({
    "model": {"omega0": 1.0},
    "bath": {"k": 4, "bandwidth": 0.8, "gamma_target": 0.05, "fock_cutoff": 2}
  })");
  REQUIRE(cfg.bath_modes.has_value());
  CHECK(cfg.bath_modes->size() == 4);
  // midpoint grid symmetric about omega0
  CHECK((*cfg.bath_modes)[0].first ==
        doctest::Approx(2.0 - (*cfg.bath_modes)[3].first));
  CHECK(cfg.make_truncated_bath().dim() == 2 * 3 * 3 * 3 * 3);

  auto big = parse_scenario(R"({
    "bath": {"k": 12, "bandwidth": 0.8, "gamma_target": 0.05, "fock_cutoff": 2}
  })");
  CHECK_THROWS_AS(big.make_truncated_bath(), PreconditionError);
  CHECK_THROWS_AS(parse_scenario(R"({})").make_bath_correlation(),
                  PreconditionError);
}

TEST_CASE("resolved config round-trips byte for byte") {
  auto cfg = parse_scenario(R"({
    "model": {"omega0": 1.0, "gamma": 0.01},
    "operators": ["sigma_x"],
    "times": [0.5],
    "closed_set": "xy",
    "rho": "excited",
    "bath": {"k": 3, "bandwidth": 0.4, "gamma_target": 0.01},
    "grid": {"start": 1.0, "stop": 2.0, "count": 3}
  })");
  std::string once = cfg.resolved_json();
  std::string twice = parse_scenario(once).resolved_json();
  CHECK(once == twice);
}

TEST_CASE("float formatting is fixed-width scientific") {
  CHECK(format_float(1.0) == "1.0000000000000000e+00");
  CHECK(format_float(-0.03125) == "-3.1250000000000000e-02");
  CHECK(format_float(1.0).size() == 22);
}
