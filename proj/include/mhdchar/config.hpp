#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhdchar/boundary.hpp"
#include "mhdchar/scan.hpp"
#include "mhdchar/thermo.hpp"
#include "mhdchar/tolerances.hpp"

namespace mhdchar {

/// Boundary conditions for a one-sided scan.
///   dirichlet:          rows selecting `components`
///   matrix:             constant complex rows (`re`, optional `im`)
///   frozen_complement:  M = E_-(zeta_0)^*, so ker M = E_-(zeta_0)^perp
struct BoundarySpec {
  enum class Kind { Dirichlet, Matrix, FrozenComplement };
  int axis = 3;
  double sigma = 0.0;
  Kind kind = Kind::Dirichlet;
  bool has_conditions = false;
  std::vector<int> components;
  CMatX matrix;
  BoundaryFrequency at;
};

struct ShockSpec {
  GasShockSpec gas;
  Vec3 B = Vec3::Zero();  ///< field used by `scan`
  std::vector<double> magnitudes{1e-1, 1e-2, 1e-3, 0.0};  ///< rows of `shock-study`
};

struct RunConfig {
  int schema_version = 1;
  std::string eos_kind;
  EosPtr eos;
  std::vector<ThermoState> states;
  std::vector<Vec3> xis;
  /// Add xi parallel and perpendicular to B for every state with B != 0.
  bool xi_manifold = false;
  std::optional<BoundarySpec> boundary;
  std::optional<ShockSpec> shock;
  HemisphereSampling sampling;
  Tolerances tol;
  bool glancing_verdict = false;
  double convergence_tol = 0.05;
  unsigned threads = 0;
  bool continuity_check = true;
  std::string source;

  /// xi list for one state, including manifold points when requested.
  std::vector<Vec3> xis_for(const ThermoState& s) const;
};

/// Parses and validates a JSON config. Errors are ConfigError with
/// "<source>:<line>: <field path>: <reason>".
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Operator for a one-sided boundary scan of `state`.
BoundaryOperator make_boundary_operator(const BoundarySpec& spec, const BoundaryProblem& problem,
                                        double eps_cont);

}  // namespace mhdchar
