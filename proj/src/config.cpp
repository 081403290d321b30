#include "mhdchar/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mhdchar/errors.hpp"
#include "mhdchar/io.hpp"

namespace mhdchar {

namespace {

class Reader {
 public:
  Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
    std::ostringstream os;
    os << source_ << ':' << line_of(path) << ": ";
    if (!path.empty()) os << join(path) << ": ";
    os << msg;
    throw ConfigError(os.str());
  }

  void only_keys(const json& j, const std::vector<std::string>& path,
                 const std::set<std::string>& allowed) const {
    if (!j.is_object()) fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!allowed.count(it.key())) {
        auto p = path;
        p.push_back(it.key());
        fail(p, "unknown field");
      }
  }

  const json& need(const json& j, const std::vector<std::string>& path, const std::string& key) const {
    if (!j.contains(key)) fail(path, "missing field '" + key + "'");
    return j[key];
  }

  double number(const json& j, std::vector<std::string> path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
  }

  double positive(const json& j, const std::vector<std::string>& path) const {
    const double v = number(j, path);
    if (!(v > 0.0)) fail(path, "must be > 0");
    return v;
  }

  long integer(const json& j, const std::vector<std::string>& path, long lo) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const long v = j.get<long>();
    if (v < lo) fail(path, "must be >= " + std::to_string(lo));
    return v;
  }

  bool boolean(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
  }

  Vec3 vec3(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) v(i) = number(j[i], path);
    return v;
  }

  ThermoState state(const json& j, const std::vector<std::string>& path) const {
    only_keys(j, path, {"rho", "u", "theta", "B"});
    ThermoState s;
    s.rho = positive(need(j, path, "rho"), sub(path, "rho"));
    s.theta = positive(need(j, path, "theta"), sub(path, "theta"));
    if (j.contains("u")) s.u = vec3(j["u"], sub(path, "u"));
    if (j.contains("B")) s.B = vec3(j["B"], sub(path, "B"));
    return s;
  }

  static std::vector<std::string> sub(std::vector<std::string> p, const std::string& k) {
    p.push_back(k);
    return p;
  }

  static std::vector<std::string> idx(std::vector<std::string> p, std::size_t i) {
    p.back() += "[" + std::to_string(i) + "]";
    return p;
  }

  int line_at(std::size_t byte) const {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text_.size(); ++i)
      if (text_[i] == '\n') ++line;
    return line;
  }

 private:
  // Line of the innermost key along the path, located textually.
  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    bool found = false;
    for (const auto& raw : path) {
      const std::string key = raw.substr(0, raw.find('['));
      const std::size_t at = text_.find('"' + key + '"', pos);
      if (at == std::string::npos) break;
      pos = at;
      found = true;
    }
    return found ? line_at(pos) : 1;
  }

  static std::string join(const std::vector<std::string>& p) {
    std::string s;
    for (const auto& k : p) s += (s.empty() ? "" : ".") + k;
    return s;
  }

  const std::string& text_;
  std::string source_;
};

std::vector<Vec3> fibonacci_directions(std::size_t n) {
  std::vector<Vec3> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

}  // namespace

std::vector<Vec3> RunConfig::xis_for(const ThermoState& s) const {
  std::vector<Vec3> out = xis;
  if (xi_manifold && s.B.norm() > 0.0) {
    const Vec3 bh = s.B.normalized();
    int k = 0;
    bh.cwiseAbs().minCoeff(&k);
    const Vec3 perp = bh.cross(unit_axis(k + 1)).normalized();
    out.push_back(bh);
    out.push_back(perp);
  }
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  Reader rd(text, source);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << source << ':' << rd.line_at(e.byte > 0 ? e.byte - 1 : 0) << ": invalid JSON: " << e.what();
    throw ConfigError(os.str());
  }
  rd.only_keys(j, {}, {"schema_version", "eos", "states", "state_grid", "xi", "xi_grid",
                       "xi_manifold", "boundary", "shock", "sampling", "tolerances",
                       "classify", "scan"});
  RunConfig c;
  c.source = source;
  c.schema_version = static_cast<int>(rd.integer(rd.need(j, {}, "schema_version"),
                                                 {"schema_version"}, 1));
  if (c.schema_version != kSchemaVersion)
    rd.fail({"schema_version"}, "unsupported version " + std::to_string(c.schema_version));

  {
    const json& e = rd.need(j, {}, "eos");
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string())
      rd.fail({"eos"}, "expected an object with a string 'kind'");
    for (auto it = e.begin(); it != e.end(); ++it)
      if (it.key() != "kind") rd.number(*it, {"eos", it.key()});
    try {
      c.eos = eos_from_json(e);
    } catch (const Error& err) {
      rd.fail({"eos"}, err.what());
    }
    c.eos_kind = c.eos->kind();
  }

  if (j.contains("states")) {
    const json& s = j["states"];
    if (!s.is_array()) rd.fail({"states"}, "expected an array of states");
    if (s.empty()) rd.fail({"states"}, "empty state grid");
    for (std::size_t i = 0; i < s.size(); ++i) c.states.push_back(rd.state(s[i], rd.idx({"states"}, i)));
  }
  if (j.contains("state_grid")) {
    const json& g = j["state_grid"];
    const std::vector<std::string> p{"state_grid"};
    rd.only_keys(g, p, {"rho", "theta", "u", "B"});
    auto list = [&](const char* key, bool vec) {
      const json& a = rd.need(g, p, key);
      if (!a.is_array() || a.empty()) rd.fail(Reader::sub(p, key), "empty state grid");
      std::vector<Vec3> out;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (vec) {
          out.push_back(rd.vec3(a[i], Reader::idx(Reader::sub(p, key), i)));
        } else {
          out.emplace_back(rd.positive(a[i], Reader::idx(Reader::sub(p, key), i)), 0.0, 0.0);
        }
      }
      return out;
    };
    const auto rhos = list("rho", false), thetas = list("theta", false);
    const auto us = g.contains("u") ? list("u", true) : std::vector<Vec3>{Vec3::Zero()};
    const auto Bs = g.contains("B") ? list("B", true) : std::vector<Vec3>{Vec3::Zero()};
    for (const auto& r : rhos)
      for (const auto& t : thetas)
        for (const auto& u : us)
          for (const auto& B : Bs) c.states.push_back({r(0), u, t(0), B});
  }

  if (j.contains("xi")) {
    const json& x = j["xi"];
    if (!x.is_array()) rd.fail({"xi"}, "expected an array of 3-vectors");
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Vec3 v = rd.vec3(x[i], rd.idx({"xi"}, i));
      if (!(v.norm() > 0.0)) rd.fail(rd.idx({"xi"}, i), "xi must be nonzero");
      c.xis.push_back(v);
    }
  }
  if (j.contains("xi_grid")) {
    const std::vector<std::string> p{"xi_grid"};
    rd.only_keys(j["xi_grid"], p, {"count"});
    const long n = rd.integer(rd.need(j["xi_grid"], p, "count"), Reader::sub(p, "count"), 1);
    for (const auto& v : fibonacci_directions(static_cast<std::size_t>(n))) c.xis.push_back(v);
  }
  if (j.contains("xi_manifold")) c.xi_manifold = rd.boolean(j["xi_manifold"], {"xi_manifold"});

  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    const std::vector<std::string> p{"boundary"};
    rd.only_keys(b, p, {"axis", "sigma", "conditions"});
    BoundarySpec bs;
    if (b.contains("axis")) bs.axis = static_cast<int>(rd.integer(b["axis"], Reader::sub(p, "axis"), 1));
    if (bs.axis > 3) rd.fail(Reader::sub(p, "axis"), "must be 1, 2 or 3");
    if (b.contains("sigma")) bs.sigma = rd.number(b["sigma"], Reader::sub(p, "sigma"));
    if (b.contains("conditions")) {
      const json& m = b["conditions"];
      const auto pc = Reader::sub(p, "conditions");
      const json& kind = rd.need(m, pc, "kind");
      if (!kind.is_string()) rd.fail(Reader::sub(pc, "kind"), "expected a string");
      const std::string k = kind.get<std::string>();
      if (k == "dirichlet") {
        rd.only_keys(m, pc, {"kind", "components"});
        bs.kind = BoundarySpec::Kind::Dirichlet;
        const json& comps = rd.need(m, pc, "components");
        if (!comps.is_array()) rd.fail(Reader::sub(pc, "components"), "expected an array");
        for (std::size_t i = 0; i < comps.size(); ++i) {
          const long v = rd.integer(comps[i], Reader::idx(Reader::sub(pc, "components"), i), 0);
          if (v > 7) rd.fail(Reader::idx(Reader::sub(pc, "components"), i), "must be in 0..7");
          bs.components.push_back(static_cast<int>(v));
        }
      } else if (k == "matrix") {
        rd.only_keys(m, pc, {"kind", "re", "im"});
        bs.kind = BoundarySpec::Kind::Matrix;
        const json& re = rd.need(m, pc, "re");
        if (!re.is_array() || re.empty()) rd.fail(Reader::sub(pc, "re"), "expected rows of 8 numbers");
        bs.matrix = CMatX::Zero(static_cast<Eigen::Index>(re.size()), var::count);
        auto fill = [&](const json& rows, const char* key, bool imag) {
          if (!rows.is_array() || rows.size() != re.size())
            rd.fail(Reader::sub(pc, key), "expected the same row count as 're'");
          for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || rows[r].size() != var::count)
              rd.fail(Reader::idx(Reader::sub(pc, key), r), "expected 8 numbers");
            for (int col = 0; col < var::count; ++col) {
              const double v = rd.number(rows[r][col], Reader::idx(Reader::sub(pc, key), r));
              auto& e = bs.matrix(static_cast<Eigen::Index>(r), col);
              e = imag ? cplx(e.real(), v) : cplx(v, e.imag());
            }
          }
        };
        fill(re, "re", false);
        if (m.contains("im")) fill(m["im"], "im", true);
      } else if (k == "frozen_complement") {
        rd.only_keys(m, pc, {"kind", "at"});
        bs.kind = BoundarySpec::Kind::FrozenComplement;
        const json& at = rd.need(m, pc, "at");
        if (!at.is_array() || at.size() != 4)
          rd.fail(Reader::sub(pc, "at"), "expected [tau, gamma_L, eta1, eta2]");
        BoundaryFrequency z;
        z.tau = rd.number(at[0], Reader::sub(pc, "at"));
        z.gamma_L = rd.number(at[1], Reader::sub(pc, "at"));
        z.eta = Eigen::Vector2d(rd.number(at[2], Reader::sub(pc, "at")),
                                rd.number(at[3], Reader::sub(pc, "at")));
        if (z.gamma_L < 0.0) rd.fail(Reader::sub(pc, "at"), "gamma_L must be >= 0");
        if (!(z.norm() > 0.0)) rd.fail(Reader::sub(pc, "at"), "frequency must be nonzero");
        bs.at = z.normalized();
      } else {
        rd.fail(Reader::sub(pc, "kind"), "unknown kind '" + k + "'");
      }
      bs.has_conditions = true;
    }
    c.boundary = bs;
  }

  if (j.contains("shock")) {
    const json& s = j["shock"];
    const std::vector<std::string> p{"shock"};
    rd.only_keys(s, p, {"upstream", "mach", "family", "axis", "B", "B_direction", "B_magnitudes"});
    ShockSpec ss;
    ss.gas.upstream = rd.state(rd.need(s, p, "upstream"), Reader::sub(p, "upstream"));
    ss.gas.mach = rd.number(rd.need(s, p, "mach"), Reader::sub(p, "mach"));
    if (s.contains("family")) {
      if (!s["family"].is_string()) rd.fail(Reader::sub(p, "family"), "expected a string");
      try {
        ss.gas.family = shock_family_from_string(s["family"].get<std::string>());
      } catch (const Error& e) {
        rd.fail(Reader::sub(p, "family"), e.what());
      }
    }
    if (s.contains("axis")) ss.gas.axis = static_cast<int>(rd.integer(s["axis"], Reader::sub(p, "axis"), 1));
    if (ss.gas.axis > 3) rd.fail(Reader::sub(p, "axis"), "must be 1, 2 or 3");
    if (s.contains("B")) ss.B = rd.vec3(s["B"], Reader::sub(p, "B"));
    if (s.contains("B_direction")) {
      ss.gas.B_direction = rd.vec3(s["B_direction"], Reader::sub(p, "B_direction"));
      if (!(ss.gas.B_direction.norm() > 0.0)) rd.fail(Reader::sub(p, "B_direction"), "must be nonzero");
    }
    if (s.contains("B_magnitudes")) {
      const json& m = s["B_magnitudes"];
      const auto pm = Reader::sub(p, "B_magnitudes");
      if (!m.is_array() || m.empty()) rd.fail(pm, "expected a nonempty array");
      ss.magnitudes.clear();
      for (std::size_t i = 0; i < m.size(); ++i) {
        const double v = rd.number(m[i], Reader::idx(pm, i));
        if (v < 0.0) rd.fail(Reader::idx(pm, i), "must be >= 0");
        if (i > 0 && !(v < ss.magnitudes.back())) rd.fail(Reader::idx(pm, i), "must be strictly descending");
        ss.magnitudes.push_back(v);
      }
    }
    c.shock = ss;
  }

  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    const std::vector<std::string> p{"sampling"};
    rd.only_keys(s, p, {"interior", "equator_factor", "equator"});
    if (s.contains("interior"))
      c.sampling.interior = static_cast<std::size_t>(rd.integer(s["interior"], Reader::sub(p, "interior"), 1));
    if (s.contains("equator_factor"))
      c.sampling.equator_factor =
          static_cast<int>(rd.integer(s["equator_factor"], Reader::sub(p, "equator_factor"), 1));
    if (s.contains("equator"))
      c.sampling.equator = static_cast<std::size_t>(rd.integer(s["equator"], Reader::sub(p, "equator"), 1));
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    const std::vector<std::string> p{"tolerances"};
    rd.only_keys(t, p, {"tol_merge", "tol_manifold", "tol_det", "eps_cont"});
    if (t.contains("tol_merge")) c.tol.tol_merge = rd.positive(t["tol_merge"], Reader::sub(p, "tol_merge"));
    if (t.contains("tol_manifold"))
      c.tol.tol_manifold = rd.positive(t["tol_manifold"], Reader::sub(p, "tol_manifold"));
    if (t.contains("tol_det")) c.tol.tol_det = rd.positive(t["tol_det"], Reader::sub(p, "tol_det"));
    if (t.contains("eps_cont")) c.tol.eps_cont = rd.positive(t["eps_cont"], Reader::sub(p, "eps_cont"));
  }

  if (j.contains("classify")) {
    const json& s = j["classify"];
    const std::vector<std::string> p{"classify"};
    rd.only_keys(s, p, {"glancing_verdict"});
    if (s.contains("glancing_verdict"))
      c.glancing_verdict = rd.boolean(s["glancing_verdict"], Reader::sub(p, "glancing_verdict"));
  }

  if (j.contains("scan")) {
    const json& s = j["scan"];
    const std::vector<std::string> p{"scan"};
    rd.only_keys(s, p, {"convergence_tol", "threads", "continuity_check"});
    if (s.contains("convergence_tol"))
      c.convergence_tol = rd.positive(s["convergence_tol"], Reader::sub(p, "convergence_tol"));
    if (s.contains("threads"))
      c.threads = static_cast<unsigned>(rd.integer(s["threads"], Reader::sub(p, "threads"), 0));
    if (s.contains("continuity_check"))
      c.continuity_check = rd.boolean(s["continuity_check"], Reader::sub(p, "continuity_check"));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

BoundaryOperator make_boundary_operator(const BoundarySpec& spec, const BoundaryProblem& problem,
                                        double eps_cont) {
  if (!spec.has_conditions) throw ConfigError("boundary: missing field 'conditions'");
  switch (spec.kind) {
    case BoundarySpec::Kind::Dirichlet:
      return BoundaryOperator::dirichlet(problem.size(), spec.components);
    case BoundarySpec::Kind::Matrix:
      return BoundaryOperator::constant(spec.matrix);
    case BoundarySpec::Kind::FrozenComplement: {
      const StableSubspace s = stable_subspace(problem, spec.at, eps_cont);
      return BoundaryOperator::constant(s.basis.adjoint());
    }
  }
  throw ConfigError("boundary: unknown conditions kind");
}

}  // namespace mhdchar
