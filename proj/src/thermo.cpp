#include "mhdchar/thermo.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mhdchar/errors.hpp"

namespace mhdchar {

namespace {

bool finite3(const Vec3& v) { return v.allFinite(); }

std::string fmt_state(double rho, double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "rho=" << rho << ", theta=" << theta;
  return os.str();
}

}  // namespace

void ThermoState::validate() const {
  if (!(std::isfinite(rho) && std::isfinite(theta) && finite3(u) && finite3(B)))
    throw NonAdmissibleState("non-finite state component");
  if (!(rho > 0.0)) throw NonAdmissibleState("density must be positive, " + fmt_state(rho, theta));
  if (!(theta > 0.0))
    throw NonAdmissibleState("temperature must be positive, " + fmt_state(rho, theta));
}

IdealGas::IdealGas(double R, double c_v) : R_(R), c_v_(c_v) {
  if (!(R > 0.0 && c_v > 0.0 && std::isfinite(R) && std::isfinite(c_v)))
    throw NonAdmissibleState("ideal gas needs R > 0 and c_v > 0");
}

EosEval IdealGas::evaluate(double rho, double theta) const {
  EosEval ev;
  ev.P = R_ * rho * theta;
  ev.P_rho = R_ * theta;
  ev.P_theta = R_ * rho;
  ev.e = c_v_ * theta;
  ev.e_theta = c_v_;
  ev.e_rho = 0.0;
  return ev;
}

BarotropicGas::BarotropicGas(double K, double exponent, double c_v)
    : K_(K), n_(exponent), c_v_(c_v) {
  if (!(K > 0.0 && exponent > 0.0 && c_v > 0.0 && std::isfinite(K) && std::isfinite(exponent) &&
        std::isfinite(c_v)))
    throw NonAdmissibleState("barotropic gas needs K > 0, exponent > 0 and c_v > 0");
}

EosEval BarotropicGas::evaluate(double rho, double theta) const {
  EosEval ev;
  ev.P = K_ * std::pow(rho, n_);
  ev.P_rho = K_ * n_ * std::pow(rho, n_ - 1.0);
  ev.P_theta = 0.0;
  // Compression energy int P / rho^2 drho keeps e_rho = (P - theta P_theta) / rho^2.
  const double comp = std::abs(n_ - 1.0) < 1e-14 ? K_ * std::log(rho)
                                                  : K_ * std::pow(rho, n_ - 1.0) / (n_ - 1.0);
  ev.e = c_v_ * theta + comp;
  ev.e_theta = c_v_;
  ev.e_rho = ev.P / (rho * rho);
  return ev;
}

EosPtr make_eos(const std::string& kind,
                const std::vector<std::pair<std::string, double>>& params) {
  std::map<std::string, double> p(params.begin(), params.end());
  auto need = [&](const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw ConfigError("eos '" + kind + "' is missing parameter '" + key + "'");
    return it->second;
  };
  if (kind == "ideal_gas") return std::make_shared<IdealGas>(need("R"), need("c_v"));
  if (kind == "barotropic")
    return std::make_shared<BarotropicGas>(need("K"), need("exponent"), need("c_v"));
  throw ConfigError("unknown eos kind '" + kind + "'");
}

EosEval eval_eos(const EquationOfState& eos, double rho, double theta) {
  if (!(rho > 0.0) || !(theta > 0.0) || !std::isfinite(rho) || !std::isfinite(theta))
    throw NonAdmissibleState("eos evaluated outside rho > 0, theta > 0 (" +
                             fmt_state(rho, theta) + ")");
  EosEval ev = eos.evaluate(rho, theta);
  const bool finite = std::isfinite(ev.P) && std::isfinite(ev.P_rho) &&
                      std::isfinite(ev.P_theta) && std::isfinite(ev.e) &&
                      std::isfinite(ev.e_theta) && std::isfinite(ev.e_rho);
  if (!finite) throw NonAdmissibleState("eos returned non-finite values at " + fmt_state(rho, theta));
  if (!(ev.P_rho > 0.0)) throw NonAdmissibleState("P_rho <= 0 at " + fmt_state(rho, theta));
  if (!(ev.e_theta > 0.0)) throw NonAdmissibleState("e_theta <= 0 at " + fmt_state(rho, theta));
  return ev;
}

double sound_speed_sq(const EosEval& ev, double rho, double theta) {
  return ev.P_rho + ev.P_theta * ev.P_theta * theta / (rho * rho * ev.e_theta);
}

double sound_speed_sq(const EquationOfState& eos, const ThermoState& state) {
  state.validate();
  const EosEval ev = eval_eos(eos, state.rho, state.theta);
  return sound_speed_sq(ev, state.rho, state.theta);
}

}  // namespace mhdchar
