#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mhdchar/linalg.hpp"

namespace mhdchar {

/// Fluid and magnetic state at a point. Units are nondimensional with the
/// magnetic permeability set to one.
struct ThermoState {
  double rho = 1.0;
  Vec3 u = Vec3::Zero();
  double theta = 1.0;
  Vec3 B = Vec3::Zero();

  /// Throws NonAdmissibleState unless rho > 0, theta > 0 and every entry is finite.
  void validate() const;
};

/// Pressure and internal energy with the partial derivatives the symbol uses.
/// `e_rho` is only consumed by the conservative shock fluxes.
struct EosEval {
  double P = 0.0;
  double P_rho = 0.0;
  double P_theta = 0.0;
  double e = 0.0;
  double e_theta = 0.0;
  double e_rho = 0.0;
};

class EquationOfState {
 public:
  virtual ~EquationOfState() = default;

  /// Raw evaluation, no admissibility check. Callers normally want eval_eos().
  virtual EosEval evaluate(double rho, double theta) const = 0;

  /// Stable kind name used in config and JSON records.
  virtual std::string kind() const = 0;
  virtual std::vector<std::pair<std::string, double>> parameters() const = 0;
};

/// P = R rho theta, e = c_v theta.
class IdealGas final : public EquationOfState {
 public:
  IdealGas(double R, double c_v);

  EosEval evaluate(double rho, double theta) const override;
  std::string kind() const override { return "ideal_gas"; }
  std::vector<std::pair<std::string, double>> parameters() const override {
    return {{"R", R_}, {"c_v", c_v_}};
  }

  double R() const { return R_; }
  double c_v() const { return c_v_; }
  /// Ratio of specific heats 1 + R / c_v.
  double adiabatic_index() const { return 1.0 + R_ / c_v_; }

 private:
  double R_;
  double c_v_;
};

/// P = K rho^n with e = c_v theta + int P / rho^2 drho. Temperature does not enter the pressure
/// (P_theta = 0), which decouples the energy equation.
class BarotropicGas final : public EquationOfState {
 public:
  BarotropicGas(double K, double exponent, double c_v);

  EosEval evaluate(double rho, double theta) const override;
  std::string kind() const override { return "barotropic"; }
  std::vector<std::pair<std::string, double>> parameters() const override {
    return {{"K", K_}, {"exponent", n_}, {"c_v", c_v_}};
  }

 private:
  double K_;
  double n_;
  double c_v_;
};

using EosPtr = std::shared_ptr<const EquationOfState>;

/// Build an EOS from its kind name and parameter list (the inverse of
/// kind()/parameters()). Throws ConfigError on unknown kinds or missing keys.
EosPtr make_eos(const std::string& kind,
                const std::vector<std::pair<std::string, double>>& params);

/// Evaluates the EOS and checks admissibility: rho > 0, theta > 0, P_rho > 0,
/// e_theta > 0 and all outputs finite.
EosEval eval_eos(const EquationOfState& eos, double rho, double theta);

/// c0^2 = P_rho + P_theta^2 theta / (rho^2 e_theta).
double sound_speed_sq(const EquationOfState& eos, const ThermoState& state);
double sound_speed_sq(const EosEval& ev, double rho, double theta);

}  // namespace mhdchar
