#include "mhdchar/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mhdchar/errors.hpp"

namespace mhdchar {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

json to_json(const ThermoState& s) {
  return {{"rho", s.rho}, {"u", to_json(s.u)}, {"theta", s.theta}, {"B", to_json(s.B)}};
}

json to_json(const WaveSpeeds& w) {
  return {{"a", w.a},     {"b", w.b},     {"h", w.h},          {"c0", w.c0},
          {"c_s", w.c_s}, {"c_f", w.c_f}, {"xi_norm", w.xi_norm}};
}

json to_json(const RegimeTag& r) {
  return {{"xi_dot_B_zero", r.xi_dot_B_zero},
          {"xi_cross_B_zero", r.xi_cross_B_zero},
          {"B_zero", r.B_zero},
          {"field_vs_sound", to_string(r.field_vs_sound)},
          {"near_manifold", r.near_manifold},
          {"case", to_string(r.field_case)}};
}

json to_json(const BoundaryFrequency& z) {
  return {{"tau", z.tau}, {"gamma_L", z.gamma_L}, {"eta", json::array({z.eta(0), z.eta(1)})}};
}

json classification_record(const Vec3& xi, const Classification& c) {
  json roots = json::array();
  for (const auto& r : c.roots) {
    json fam = json::array();
    for (Wave w : r.families) fam.push_back(to_string(w));
    json jr = {{"lambda", r.lambda},
               {"mult", r.multiplicity},
               {"class", to_string(r.classification)},
               {"families", fam}};
    if (r.eigenvector_count >= 0) jr["eigenvectors"] = r.eigenvector_count;
    roots.push_back(jr);
  }
  return {{"xi", to_json(xi)}, {"regime", to_json(c.regime)}, {"speeds", to_json(c.speeds)},
          {"roots", roots}};
}

json eos_to_json(const EquationOfState& eos) {
  json j = {{"kind", eos.kind()}};
  for (const auto& [k, v] : eos.parameters()) j[k] = v;
  return j;
}

EosPtr eos_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("eos: expected an object with a string 'kind'");
  std::vector<std::pair<std::string, double>> params;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "kind") continue;
    if (!it->is_number()) throw ConfigError("eos." + it.key() + ": expected a number");
    params.emplace_back(it.key(), it->get<double>());
  }
  return make_eos(j["kind"].get<std::string>(), params);
}

namespace {

Vec3 vec3_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(what + ": expected an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(what + ": expected an array of 3 numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

double num_from(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(what + "." + key + ": expected a number");
  return j[key].get<double>();
}

}  // namespace

ThermoState state_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("state: expected an object");
  ThermoState s;
  s.rho = num_from(j, "rho", "state");
  s.theta = num_from(j, "theta", "state");
  s.u = j.contains("u") ? vec3_from(j["u"], "state.u") : Vec3::Zero();
  s.B = j.contains("B") ? vec3_from(j["B"], "state.B") : Vec3::Zero();
  return s;
}

json shock_to_json(const PlanarShock& s) {
  return {{"schema_version", kSchemaVersion},
          {"type", "planar_shock"},
          {"eos", eos_to_json(*s.eos)},
          {"axis", s.axis},
          {"family", to_string(s.family)},
          {"mach", s.mach},
          {"sigma", s.sigma},
          {"left", to_json(s.left)},
          {"right", to_json(s.right)},
          {"rh_residual", s.rh_residual},
          {"degenerate", s.degenerate}};
}

PlanarShock shock_from_json(const json& j) {
  if (!j.is_object() || j.value("type", "") != "planar_shock")
    throw ConfigError("shock record: missing type 'planar_shock'");
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw ConfigError("shock record: unsupported schema_version");
  PlanarShock s;
  s.eos = eos_from_json(j.at("eos"));
  s.axis = j.at("axis").get<int>();
  s.family = shock_family_from_string(j.at("family").get<std::string>());
  s.mach = j.at("mach").get<double>();
  s.sigma = j.at("sigma").get<double>();
  s.left = state_from_json(j.at("left"));
  s.right = state_from_json(j.at("right"));
  s.rh_residual = j.value("rh_residual", 0.0);
  s.degenerate = j.value("degenerate", false);
  return s;
}

std::string scan_csv(const ScanResult& r) {
  std::ostringstream os;
  os << "tau,gamma_L,eta1,eta2,abs_D,dim_Eminus\n";
  for (const auto& p : r.points) {
    os << format_double(p.zf.tau) << ',' << format_double(p.zf.gamma_L) << ','
       << format_double(p.zf.eta(0)) << ',' << format_double(p.zf.eta(1)) << ','
       << (p.ok() ? format_double(p.abs_D) : std::string("nan")) << ','
       << (p.ok() ? p.dim_Eminus : -1) << '\n';
  }
  return os.str();
}

json scan_summary(const ScanResult& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"index", f.index}, {"zeta", to_json(f.zf)}, {"kind", f.kind},
                     {"message", f.message}});
  json hist = json::array();
  for (auto c : r.histogram) hist.push_back(c);
  json j = {{"min_abs_D", r.min_abs_D},
            {"argmin", r.any_valid() ? to_json(r.argmin_zf()) : json(nullptr)},
            {"argmin_index", r.argmin},
            {"grid",
             {{"interior", r.interior}, {"equator", r.equator}, {"points", r.points.size()}}},
            {"failures", fails},
            {"histogram", hist},
            {"dim_Eminus_expected", r.dim_expected},
            {"dim_Eminus_constant", r.dim_constant},
            {"max_invariance_residual", r.max_invariance_residual},
            {"max_route_gap", r.max_route_gap},
            {"continuity_flags", r.continuity_flags}};
  return j;
}

json study_to_json(const BStudy& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    json jr = {{"B_mag", r.B_mag},
               {"min_abs_D", r.min_abs_D},
               {"argmin", to_json(r.argmin)},
               {"failures", r.failures},
               {"dim_Eminus", r.dim_Eminus},
               {"rh_residual", r.rh_residual},
               {"density_ratio", r.density_ratio},
               {"sigma", r.sigma},
               {"continuity_flags", r.continuity_flags}};
    if (r.has_refined)
      jr["refined"] = {{"factor", r.refined.factor},
                       {"min_abs_D", r.refined.fine},
                       {"rel_change", r.refined.rel_change},
                       {"converged", r.refined.converged}};
    if (!r.error.empty()) jr["error"] = r.error;
    rows.push_back(jr);
  }
  return {{"rows", rows},
          {"assertions",
           {{"all_positive", s.all_positive},
            {"trend_monotone", s.trend_monotone},
            {"half_floor", s.half_floor},
            {"all_converged", s.all_converged}}},
          {"max_rh_residual", s.max_rh_residual}};
}

std::string study_csv(const BStudy& s) {
  std::ostringstream os;
  os << "B_mag,min_abs_D,argmin_tau,argmin_gamma_L,argmin_eta1,argmin_eta2,failures,"
        "min_abs_D_refined\n";
  for (const auto& r : s.rows) {
    os << format_double(r.B_mag) << ',' << format_double(r.min_abs_D) << ','
       << format_double(r.argmin.tau) << ',' << format_double(r.argmin.gamma_L) << ','
       << format_double(r.argmin.eta(0)) << ',' << format_double(r.argmin.eta(1)) << ','
       << r.failures << ',' << (r.has_refined ? format_double(r.refined.fine) : "") << '\n';
  }
  return os.str();
}

}  // namespace mhdchar
