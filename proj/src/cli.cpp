#include "mhdchar/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "mhdchar/charstruct.hpp"
#include "mhdchar/config.hpp"
#include "mhdchar/errors.hpp"
#include "mhdchar/io.hpp"
#include "mhdchar/scan.hpp"
#include "mhdchar/shock.hpp"

namespace mhdchar {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string out = ".";
  int refine = 1;
  bool allow_partial = false;
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << content;
  if (!f) throw ConfigError("write failed for '" + p.string() + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const std::string& command, const RunConfig& cfg) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"eos", eos_to_json(*cfg.eos)}};
}

json error_json(const Error& e) { return {{"kind", e.kind()}, {"message", e.what()}}; }

[[noreturn]] void missing(const RunConfig& cfg, const std::string& field) {
  throw ConfigError(cfg.source + ":1: missing field '" + field + "'");
}

json sampling_json(const HemisphereSampling& s) {
  return {{"interior", s.interior}, {"equator", s.equator_count()}};
}

std::string zeta_text(const BoundaryFrequency& z) {
  return "(" + format_double(z.tau) + ", " + format_double(z.gamma_L) + ", " +
         format_double(z.eta(0)) + ", " + format_double(z.eta(1)) + ")";
}

int cmd_speeds(const RunConfig& cfg, const Flags& fl, std::ostream& out) {
  if (cfg.states.empty()) missing(cfg, "states");
  json recs = json::array();
  std::string csv = "state_index,xi1,xi2,xi3,a,b,h,c0,c_s,c_f\n";
  bool any_error = false;
  for (std::size_t i = 0; i < cfg.states.size(); ++i) {
    const auto xis = cfg.xis_for(cfg.states[i]);
    if (xis.empty()) missing(cfg, "xi");
    for (const Vec3& xi : xis) {
      json r = {{"state_index", i}, {"state", to_json(cfg.states[i])}, {"xi", to_json(xi)}};
      try {
        const WaveSpeeds w = wave_speeds(cfg.states[i], *cfg.eos, xi);
        const auto ev = eigenvalues_unmerged(cfg.states[i], *cfg.eos, xi);
        r["speeds"] = to_json(w);
        r["eigenvalues"] = ev;
        csv += std::to_string(i);
        for (double x : {xi(0), xi(1), xi(2), w.a, w.b, w.h, w.c0, w.c_s, w.c_f})
          csv += "," + format_double(x);
        csv += "\n";
      } catch (const Error& e) {
        r["error"] = error_json(e);
        any_error = true;
      }
      recs.push_back(r);
    }
  }
  json doc = header("speeds", cfg);
  doc["records"] = recs;
  write_file(fs::path(fl.out) / "speeds.json", dump(doc));
  write_file(fs::path(fl.out) / "speeds.csv", csv);
  out << "speeds: " << recs.size() << " records\n";
  return any_error && !fl.allow_partial ? exit_code::partial : exit_code::ok;
}

int cmd_classify(const RunConfig& cfg, const Flags& fl, std::ostream& out) {
  if (cfg.states.empty()) missing(cfg, "states");
  std::optional<BoundaryFrame> frame;
  if (cfg.boundary) frame = BoundaryFrame{cfg.boundary->axis, cfg.boundary->sigma};
  ClassifyOptions opts;
  opts.tol = cfg.tol;
  opts.glancing_verdict = cfg.glancing_verdict;
  json recs = json::array();
  std::size_t errors = 0;
  for (std::size_t i = 0; i < cfg.states.size(); ++i) {
    const auto xis = cfg.xis_for(cfg.states[i]);
    if (xis.empty()) missing(cfg, "xi");
    for (const Vec3& xi : xis) {
      json r;
      try {
        r = classification_record(xi, classify(cfg.states[i], *cfg.eos, xi, frame, opts));
      } catch (const Error& e) {
        r = {{"xi", to_json(xi)}, {"error", error_json(e)}};
        ++errors;
      }
      r["state_index"] = i;
      recs.push_back(r);
    }
  }
  json doc = header("classify", cfg);
  doc["records"] = recs;
  doc["errors"] = errors;
  write_file(fs::path(fl.out) / "classify.json", dump(doc));
  out << "classify: " << recs.size() << " records, " << errors << " errors\n";
  return errors ? exit_code::assertion : exit_code::ok;
}

int cmd_scan(const RunConfig& cfg, const Flags& fl, std::ostream& out) {
  ScanOptions so;
  so.eps_cont = cfg.tol.eps_cont;
  so.threads = cfg.threads;
  so.continuity_check = cfg.continuity_check;

  json doc = header("scan", cfg);
  doc["sampling"] = sampling_json(cfg.sampling);
  std::optional<BoundaryProblem> problem;
  std::optional<BoundaryOperator> op;
  try {
    if (cfg.shock) {
      const auto& s = *cfg.shock;
      const PlanarShock sh = rankine_hugoniot(cfg.eos, s.gas.upstream, s.gas.family, s.gas.mach,
                                              s.gas.axis, s.B);
      write_file(fs::path(fl.out) / "shock.json", dump(shock_to_json(sh)));
      doc["problem"] = "shock";
      problem.emplace(shock_problem(sh));
      op.emplace(shock_boundary_operator(sh));
    } else if (cfg.boundary) {
      if (!cfg.boundary->has_conditions) missing(cfg, "boundary.conditions");
      if (cfg.states.size() != 1)
        throw ConfigError(cfg.source + ":1: states: a boundary scan takes exactly one state");
      doc["problem"] = "boundary";
      doc["axis"] = cfg.boundary->axis;
      problem.emplace(BoundaryProblem::one_sided(cfg.states[0], *cfg.eos, cfg.boundary->axis,
                                                 cfg.boundary->sigma, cfg.tol.tol_det));
      op.emplace(make_boundary_operator(*cfg.boundary, *problem, cfg.tol.eps_cont));
    } else {
      missing(cfg, "boundary");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    doc["error"] = error_json(e);
    write_file(fs::path(fl.out) / "scan_summary.json", dump(doc));
    out << "scan: setup failed: " << e.what() << "\n";
    return exit_code::partial;
  }

  const ScanResult r = uniform_scan(*problem, *op, cfg.sampling, so);
  write_file(fs::path(fl.out) / "scan.csv", scan_csv(r));
  doc["summary"] = scan_summary(r);
  std::size_t failures = r.failures.size();
  out << "min |D| = " << format_double(r.min_abs_D);
  if (r.any_valid()) out << " at " << zeta_text(r.argmin_zf());
  out << " over " << r.points.size() << " points, " << r.failures.size() << " failures\n";
  if (fl.refine > 1) {
    const ScanResult f = uniform_scan(*problem, *op, cfg.sampling.refined(fl.refine), so);
    write_file(fs::path(fl.out) / "scan_refined.csv", scan_csv(f));
    const ConvergenceReport c = convergence(r, f, fl.refine, cfg.convergence_tol);
    failures += f.failures.size();
    doc["refined"] = scan_summary(f);
    doc["convergence"] = {{"factor", c.factor},
                          {"coarse", c.coarse},
                          {"fine", c.fine},
                          {"rel_change", c.rel_change},
                          {"tolerance", cfg.convergence_tol},
                          {"status", c.converged ? "converged" : "not converged"}};
    out << "refine " << fl.refine << ": min |D| = " << format_double(c.fine)
        << ", relative change " << format_double(c.rel_change) << ", "
        << (c.converged ? "converged" : "not converged") << "\n";
  }
  doc["partial"] = failures > 0;
  write_file(fs::path(fl.out) / "scan_summary.json", dump(doc));
  return failures > 0 && !fl.allow_partial ? exit_code::partial : exit_code::ok;
}

int cmd_shock_study(const RunConfig& cfg, const Flags& fl, std::ostream& out) {
  if (!cfg.shock) missing(cfg, "shock");
  const auto& s = *cfg.shock;
  ScanOptions so;
  so.eps_cont = cfg.tol.eps_cont;
  so.threads = cfg.threads;
  so.continuity_check = cfg.continuity_check;
  const BStudy st = b_to_zero_study(cfg.eos, s.gas, s.magnitudes, cfg.sampling, fl.refine, so,
                                    cfg.convergence_tol);
  json shocks = json::array();
  for (const auto& row : st.rows) {
    try {
      const Vec3 B = s.gas.B_direction.normalized() * row.B_mag;
      shocks.push_back(shock_to_json(
          rankine_hugoniot(cfg.eos, s.gas.upstream, s.gas.family, s.gas.mach, s.gas.axis, B)));
    } catch (const Error& e) {
      shocks.push_back({{"error", error_json(e)}});
    }
  }
  json doc = header("shock-study", cfg);
  doc["sampling"] = sampling_json(cfg.sampling);
  doc["spec"] = {{"upstream", to_json(s.gas.upstream)},
                 {"mach", s.gas.mach},
                 {"family", to_string(s.gas.family)},
                 {"axis", s.gas.axis},
                 {"B_direction", to_json(s.gas.B_direction)},
                 {"refine", fl.refine}};
  doc["study"] = study_to_json(st);
  doc["shocks"] = shocks;
  write_file(fs::path(fl.out) / "shock_study.json", dump(doc));
  write_file(fs::path(fl.out) / "shock_study.csv", study_csv(st));

  std::size_t failures = 0;
  for (const auto& row : st.rows) {
    out << "|B| = " << format_double(row.B_mag) << "  min |D| = " << format_double(row.min_abs_D);
    if (row.has_refined)
      out << "  refined " << format_double(row.refined.fine) << " ("
          << (row.refined.converged ? "converged" : "not converged") << ")";
    if (!row.error.empty()) out << "  error: " << row.error;
    out << "\n";
    failures += row.failures + (row.error.empty() ? 0 : 1);
  }
  const bool asserts = st.all_positive && st.trend_monotone && st.half_floor &&
                       (fl.refine <= 1 || st.all_converged);
  out << "assertions: positive=" << st.all_positive << " monotone=" << st.trend_monotone
      << " half_floor=" << st.half_floor;
  if (fl.refine > 1) out << " converged=" << st.all_converged;
  out << "\n";
  if (failures > 0 && !fl.allow_partial) return exit_code::partial;
  return asserts ? exit_code::ok : exit_code::assertion;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic structure and Lopatinski scans for full ideal MHD", "mhdchar"};
  app.require_subcommand(1);
  Flags fl;
  auto add_common = [&](CLI::App* sub, bool scanning) {
    sub->add_option("--config", fl.config, "JSON run configuration")->required();
    sub->add_option("--out", fl.out, "output directory")->capture_default_str();
    if (scanning) {
      sub->add_option("--refine", fl.refine, "also scan a grid k times denser")
          ->check(CLI::PositiveNumber);
      sub->add_flag("--allow-partial", fl.allow_partial,
                    "exit 0 even if some points failed");
    }
  };
  auto* sp = app.add_subcommand("speeds", "wave speeds for every (state, xi)");
  auto* cl = app.add_subcommand("classify", "eigenvalue classification for every (state, xi)");
  auto* sc = app.add_subcommand("scan", "Lopatinski scan over the frequency hemisphere");
  auto* st = app.add_subcommand("shock-study", "small-field limit study for a fast shock");
  add_common(sp, false);
  add_common(cl, false);
  add_common(sc, true);
  add_common(st, true);
  sp->add_flag("--allow-partial", fl.allow_partial, "exit 0 even if some records failed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    const RunConfig cfg = load_config(fl.config);
    std::error_code ec;
    fs::create_directories(fl.out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + fl.out + "': " + ec.message());
    if (sp->parsed()) return cmd_speeds(cfg, fl, out);
    if (cl->parsed()) return cmd_classify(cfg, fl, out);
    if (sc->parsed()) return cmd_scan(cfg, fl, out);
    return cmd_shock_study(cfg, fl, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::partial;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace mhdchar
