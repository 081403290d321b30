#include <doctest.h>

#include <cmath>
#include <limits>

#include "mhdchar/errors.hpp"
#include "mhdchar/thermo.hpp"
#include "oracles.hpp"

using namespace mhdchar;

namespace {

// Central-difference partials of P and e.
void check_partials(const EquationOfState& eos, double rho, double theta) {
  const EosEval ev = eval_eos(eos, rho, theta);
  const double hr = 1e-6 * rho, ht = 1e-6 * theta;
  const EosEval rp = eos.evaluate(rho + hr, theta), rm = eos.evaluate(rho - hr, theta);
  const EosEval tp = eos.evaluate(rho, theta + ht), tm = eos.evaluate(rho, theta - ht);
  auto close = [](double fd, double exact, double scale) {
    CHECK(std::abs(fd - exact) <= 1e-7 * std::max(std::abs(exact), scale));
  };
  close((rp.P - rm.P) / (2 * hr), ev.P_rho, std::abs(ev.P) / rho);
  close((tp.P - tm.P) / (2 * ht), ev.P_theta, std::abs(ev.P) / theta);
  close((tp.e - tm.e) / (2 * ht), ev.e_theta, std::abs(ev.e) / theta);
  close((rp.e - rm.e) / (2 * hr), ev.e_rho, std::abs(ev.e) / rho);
}

}  // namespace

TEST_CASE("ideal gas closed forms") {
  IdealGas g(1.0, 1.5);
  const EosEval ev = g.evaluate(2.0, 3.0);
  CHECK(ev.P == doctest::Approx(6.0));
  CHECK(ev.P_rho == doctest::Approx(3.0));
  CHECK(ev.P_theta == doctest::Approx(2.0));
  CHECK(ev.e == doctest::Approx(4.5));
  CHECK(ev.e_theta == doctest::Approx(1.5));
  CHECK(g.adiabatic_index() == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("eos partial derivatives agree with finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lg(-2.0, 2.0);
  const IdealGas ideal(0.7, 2.1);
  const BarotropicGas baro(1.3, 1.4, 0.9);
  const BarotropicGas iso(2.0, 1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double rho = std::pow(10.0, lg(rng)), theta = std::pow(10.0, lg(rng));
    check_partials(ideal, rho, theta);
    check_partials(baro, rho, theta);
    check_partials(iso, rho, theta);
  }
}

TEST_CASE("sound speed of an ideal gas is Gamma R theta") {
  std::mt19937_64 rng(11);
  const IdealGas g(1.0, 1.5);
  for (int k = 0; k < 100; ++k) {
    const ThermoState s = oracle::random_state(rng);
    CHECK(sound_speed_sq(g, s) == doctest::Approx(5.0 / 3.0 * s.theta).epsilon(1e-14));
  }
}

TEST_CASE("barotropic sound speed ignores temperature") {
  const BarotropicGas g(2.0, 1.4, 1.0);
  ThermoState s;
  s.rho = 0.5;
  s.theta = 10.0;
  CHECK(sound_speed_sq(g, s) == doctest::Approx(2.0 * 1.4 * std::pow(0.5, 0.4)));
}

TEST_CASE("state admissibility") {
  ThermoState s;
  CHECK_NOTHROW(s.validate());
  s.rho = 0.0;
  CHECK_THROWS_AS(s.validate(), NonAdmissibleState);
  s.rho = 1.0;
  s.theta = -1.0;
  CHECK_THROWS_AS(s.validate(), NonAdmissibleState);
  s.theta = 1.0;
  s.B(1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(s.validate(), NonAdmissibleState);
  const IdealGas g(1.0, 1.0);
  CHECK_THROWS_AS(eval_eos(g, -1.0, 1.0), NonAdmissibleState);
}

TEST_CASE("eos factory") {
  auto e = make_eos("ideal_gas", {{"R", 2.0}, {"c_v", 3.0}});
  CHECK(e->kind() == "ideal_gas");
  CHECK(e->parameters().size() == 2);
  CHECK_THROWS_AS(make_eos("ideal_gas", {{"R", 2.0}}), ConfigError);
  CHECK_THROWS_AS(make_eos("van_der_waals", {}), ConfigError);
  CHECK_THROWS_AS(make_eos("ideal_gas", {{"R", -2.0}, {"c_v", 3.0}}), NonAdmissibleState);
  auto b = make_eos("barotropic", {{"K", 1.0}, {"exponent", 2.0}, {"c_v", 1.0}});
  CHECK(b->evaluate(1.0, 1.0).P_theta == 0.0);
}

TEST_CASE("errors carry their kind") {
  try {
    throw SpectralSplitFailure("gap");
  } catch (const Error& e) {
    CHECK(e.kind() == "SpectralSplitFailure");
    CHECK(std::string(e.what()).find("gap") != std::string::npos);
  }
}
