#pragma once

#include <string>

#include <json.hpp>

#include "mhdchar/charstruct.hpp"
#include "mhdchar/scan.hpp"
#include "mhdchar/shock.hpp"
#include "mhdchar/thermo.hpp"

namespace mhdchar {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// "%.17g": round-trippable decimal text.
std::string format_double(double x);

json to_json(const Vec3& v);
json to_json(const ThermoState& s);
json to_json(const WaveSpeeds& w);
json to_json(const RegimeTag& r);
json to_json(const BoundaryFrequency& z);
/// {xi, regime, roots: [{lambda, mult, class, families, eigenvectors?}]}
json classification_record(const Vec3& xi, const Classification& c);

json eos_to_json(const EquationOfState& eos);
EosPtr eos_from_json(const json& j);

ThermoState state_from_json(const json& j);

json shock_to_json(const PlanarShock& s);
PlanarShock shock_from_json(const json& j);

/// Header tau,gamma_L,eta1,eta2,abs_D,dim_Eminus; failed points carry nan and -1.
std::string scan_csv(const ScanResult& r);
/// {min_abs_D, argmin, grid, failures, ...}
json scan_summary(const ScanResult& r);

json study_to_json(const BStudy& s);
std::string study_csv(const BStudy& s);

}  // namespace mhdchar
