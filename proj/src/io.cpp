#include "hlx/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hlx/errors.hpp"

namespace hlx {

using nlohmann::json;

namespace {

// ---- config helpers -------------------------------------------------------

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigurationError(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigurationError(fmt::format("'{}' has the wrong type", key));
  }
}

Vector to_vector(const json& j, const char* key) {
  if (!j.is_array()) throw ConfigurationError(fmt::format("'{}' must be an array", key));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigurationError(fmt::format("'{}' must hold numbers", key));
    v(static_cast<Eigen::Index>(i)) = j[i].get<Scalar>();
  }
  return v;
}

json from_vector(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

// ---- binary helpers -------------------------------------------------------

template <typename T>
void put(std::string& buf, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  auto bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf.push_back(static_cast<char>(bits & 0xffu));
    bits >>= 8;
  }
}

template <typename T>
T take(const std::string& buf, std::size_t& pos) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  if (pos + sizeof(U) > buf.size()) throw IoError("checkpoint is truncated");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bits |= static_cast<U>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  }
  pos += sizeof(U);
  return std::bit_cast<T>(bits);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

json bound_json(const std::optional<BoundVerdict>& v) {
  if (!v) return nullptr;
  return {{"holds", v->holds}, {"lhs", v->lhs}, {"rhs", v->rhs},
          {"energy_envelope", v->energy_envelope}};
}

}  // namespace

// ---- RunConfig ------------------------------------------------------------

void RunConfig::validate() const {
  torus.validate();
  if (!(solver.t_end > 0.0)) throw ConfigurationError("t_end must be positive");
  if (!(solver.nu >= 0.0)) throw ConfigurationError("nu must be nonnegative");
  if (!(solver.mu >= 0.0)) throw ConfigurationError("mu must be nonnegative");
  solver.validate();
  if (gauge_shift.size() != 0 && gauge_shift.size() != torus.dim) {
    throw ConfigurationError(fmt::format("gauge_shift must have {} components", torus.dim));
  }
  if (initial.b_mean && initial.b_mean->size() != torus.dim) {
    throw ConfigurationError(fmt::format("b_mean must have {} components", torus.dim));
  }
  static const std::set<std::string> presets{"beltrami-abc", "orszag-tang-like",
                                             "random-solenoidal"};
  if (!presets.contains(initial.preset)) {
    throw ConfigurationError(fmt::format("unknown initial-data preset '{}'", initial.preset));
  }
  if (out_dir.empty()) throw ConfigurationError("out_dir must not be empty");
}

SweepPlan RunConfig::sweep_plan(int threads) const {
  SweepPlan plan;
  plan.torus = torus;
  plan.initial = initial;
  plan.mu_values = mu_values;
  plan.nu_rule = nu_rule;
  plan.t_end = solver.t_end;
  plan.dt = solver.dt;
  plan.cfl = solver.cfl;
  plan.record_every = solver.record_every;
  plan.perturbation = perturbation;
  plan.threads = threads;
  return plan;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.torus == b.torus && a.solver == b.solver && a.initial == b.initial &&
         a.out_dir == b.out_dir && same_vector(a.gauge_shift, b.gauge_shift) &&
         a.mu_values == b.mu_values && a.nu_rule == b.nu_rule &&
         a.perturbation == b.perturbation;
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
  reject_unknown(j, {"torus", "nu", "mu", "dt", "cfl", "t_end", "record_every", "initial",
                     "gauge_shift", "out_dir", "sweep"},
                 "config");
  RunConfig cfg;

  if (j.contains("torus")) {
    const json& t = j.at("torus");
    reject_unknown(t, {"dim", "modes", "side_length"}, "torus");
    cfg.torus.dim = get_or(t, "dim", cfg.torus.dim);
    cfg.torus.modes = get_or(t, "modes", cfg.torus.modes);
    cfg.torus.side_length = get_or(t, "side_length", cfg.torus.side_length);
  }

  cfg.solver.nu = get_or(j, "nu", 0.0);
  cfg.solver.mu = get_or(j, "mu", 0.0);
  if (j.contains("dt")) {
    const json& dt = j.at("dt");
    if (dt.is_string()) {
      if (dt.get<std::string>() != "auto") throw ConfigurationError("dt must be a number or \"auto\"");
    } else if (dt.is_number()) {
      cfg.solver.dt = dt.get<Scalar>();
    } else {
      throw ConfigurationError("dt must be a number or \"auto\"");
    }
  }
  cfg.solver.cfl = get_or(j, "cfl", cfg.solver.cfl);
  cfg.solver.t_end = get_or(j, "t_end", cfg.solver.t_end);
  cfg.solver.record_every = get_or(j, "record_every", cfg.solver.record_every);
  cfg.out_dir = get_or<std::string>(j, "out_dir", cfg.out_dir);
  if (j.contains("gauge_shift")) cfg.gauge_shift = to_vector(j.at("gauge_shift"), "gauge_shift");

  if (j.contains("initial")) {
    const json& i = j.at("initial");
    reject_unknown(i, {"preset", "params", "seed", "b_mean"}, "initial");
    cfg.initial.preset = get_or<std::string>(i, "preset", cfg.initial.preset);
    cfg.initial.seed = get_or<std::uint64_t>(i, "seed", 0);
    if (i.contains("params")) {
      const json& p = i.at("params");
      if (!p.is_object()) throw ConfigurationError("'params' must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!value.is_number()) throw ConfigurationError(fmt::format("param '{}' must be a number", key));
        cfg.initial.params[key] = value.get<Scalar>();
      }
    }
    if (i.contains("b_mean")) cfg.initial.b_mean = to_vector(i.at("b_mean"), "b_mean");
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown(s, {"mu_values", "nu_rule", "perturbation"}, "sweep");
    if (s.contains("mu_values")) {
      const Vector mus = to_vector(s.at("mu_values"), "mu_values");
      cfg.mu_values.assign(mus.data(), mus.data() + mus.size());
    }
    if (s.contains("nu_rule")) {
      const json& r = s.at("nu_rule");
      if (r.is_string() && r.get<std::string>() == "equal-to-mu") {
        cfg.nu_rule = NuRule{};
      } else if (r.is_object() && r.contains("fixed") && r.at("fixed").is_number() && r.size() == 1) {
        cfg.nu_rule = NuRule{false, r.at("fixed").get<Scalar>()};
      } else {
        throw ConfigurationError("nu_rule must be \"equal-to-mu\" or {\"fixed\": value}");
      }
    }
    if (s.contains("perturbation")) {
      const json& p = s.at("perturbation");
      reject_unknown(p, {"amplitude", "base_mode"}, "perturbation");
      cfg.perturbation.amplitude = get_or(p, "amplitude", 0.0);
      cfg.perturbation.base_mode = get_or(p, "base_mode", 2);
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError(fmt::format("cannot open config '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& cfg) {
  json j;
  j["torus"] = {{"dim", cfg.torus.dim},
                {"modes", cfg.torus.modes},
                {"side_length", cfg.torus.side_length}};
  j["nu"] = cfg.solver.nu;
  j["mu"] = cfg.solver.mu;
  if (cfg.solver.dt) {
    j["dt"] = *cfg.solver.dt;
  } else {
    j["dt"] = "auto";
  }
  j["cfl"] = cfg.solver.cfl;
  j["t_end"] = cfg.solver.t_end;
  j["record_every"] = cfg.solver.record_every;
  j["out_dir"] = cfg.out_dir;
  if (cfg.gauge_shift.size() > 0) j["gauge_shift"] = from_vector(cfg.gauge_shift);

  json init{{"preset", cfg.initial.preset}, {"seed", cfg.initial.seed}};
  init["params"] = json::object();
  for (const auto& [k, v] : cfg.initial.params) init["params"][k] = v;
  if (cfg.initial.b_mean) init["b_mean"] = from_vector(*cfg.initial.b_mean);
  j["initial"] = init;

  json sweep;
  sweep["mu_values"] = cfg.mu_values;
  if (cfg.nu_rule.equal_to_mu) {
    sweep["nu_rule"] = "equal-to-mu";
  } else {
    sweep["nu_rule"] = {{"fixed", cfg.nu_rule.fixed}};
  }
  sweep["perturbation"] = {{"amplitude", cfg.perturbation.amplitude},
                           {"base_mode", cfg.perturbation.base_mode}};
  j["sweep"] = sweep;
  return j;
}

// ---- checkpoints ----------------------------------------------------------

void write_checkpoint(const std::filesystem::path& path, const MhdState& state) {
  const TorusSpec& spec = state.u.spec();
  std::string buf = "HLX1";
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(spec.dim));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(spec.modes));
  put<double>(buf, spec.side_length);
  put<double>(buf, state.t);
  put<std::uint64_t>(buf, static_cast<std::uint64_t>(state.u.grid()->spectral_size()));
  for (const SpectralField* f : {&state.u, &state.b}) {
    for (int c = 0; c < f->ncomp(); ++c) {
      for (const Complex& z : (*f)[c]) {
        put<double>(buf, z.real());
        put<double>(buf, z.imag());
      }
    }
  }
  put<std::uint64_t>(buf, fnv1a(buf));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write checkpoint '{}'", path.string()));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError(fmt::format("failed writing checkpoint '{}'", path.string()));
}

MhdState read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open checkpoint '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < 4 + 8 || buf.compare(0, 4, "HLX1") != 0) {
    throw IoError("not an HLX1 checkpoint");
  }
  std::size_t pos = buf.size() - 8;
  const auto stored_hash = take<std::uint64_t>(buf, pos);
  if (fnv1a(buf.substr(0, buf.size() - 8)) != stored_hash) {
    throw IoError("checkpoint checksum mismatch");
  }

  pos = 4;
  TorusSpec spec;
  spec.dim = static_cast<int>(take<std::uint32_t>(buf, pos));
  spec.modes = static_cast<int>(take<std::uint32_t>(buf, pos));
  spec.side_length = take<double>(buf, pos);
  const double t = take<double>(buf, pos);
  const auto slots = take<std::uint64_t>(buf, pos);
  try {
    spec.validate();
  } catch (const ConfigurationError& e) {
    throw IoError(fmt::format("checkpoint header is invalid: {}", e.what()));
  }
  const GridPtr grid = Grid::make(spec);
  if (slots != static_cast<std::uint64_t>(grid->spectral_size())) {
    throw IoError("checkpoint coefficient count does not match its grid");
  }
  const std::size_t expected = pos + 2 * spec.dim * slots * 16 + 8;
  if (buf.size() != expected) throw IoError("checkpoint has the wrong length");

  MhdState state = zero_state(grid);
  state.t = t;
  for (SpectralField* f : {&state.u, &state.b}) {
    for (int c = 0; c < f->ncomp(); ++c) {
      for (Complex& z : (*f)[c]) {
        const double re = take<double>(buf, pos);
        const double im = take<double>(buf, pos);
        z = {re, im};
      }
    }
  }
  if (!is_finite(state)) throw IoError("checkpoint holds non-finite coefficients");
  return state;
}

// ---- summaries ------------------------------------------------------------

json to_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"mu", r.mu},
                    {"nu", r.nu},
                    {"max_helicity_drift", r.max_helicity_drift},
                    {"max_msp_drift", r.max_msp_drift},
                    {"energy_balance_residual", r.energy_balance_residual},
                    {"helicity_balance_residual", r.helicity_balance_residual},
                    {"msp_balance_residual", r.msp_balance_residual},
                    {"sqrt_mu_bound", bound_json(r.bound)},
                    {"envelope", r.envelope},
                    {"within_envelope", r.within_envelope},
                    {"peak_shell", r.peak_shell},
                    {"resolved", r.resolved},
                    {"diverged", r.diverged},
                    {"message", r.message}});
  }
  json j{{"dim", result.dim},
         {"drift_quantity", result.dim == 3 ? "helicity" : "mean_square_potential"},
         {"rows", rows},
         {"bound_constant", result.bound_constant},
         {"flagged", result.flagged_count()}};
  if (result.fit) {
    j["fit"] = {{"slope", result.fit->slope},
                {"intercept", result.fit->intercept},
                {"points", result.fit->points}};
  } else {
    j["fit"] = nullptr;
  }
  return j;
}

void write_sweep_summary_csv(std::ostream& os, const SweepResult& result) {
  os << "mu,nu,max_helicity_drift,max_msp_drift,energy_balance_residual,"
        "helicity_balance_residual,msp_balance_residual,bound_lhs,bound_rhs,bound_holds,"
        "envelope,within_envelope,resolved,diverged\n";
  for (const auto& r : result.rows) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},", r.mu, r.nu,
                      r.max_helicity_drift, r.max_msp_drift, r.energy_balance_residual,
                      r.helicity_balance_residual, r.msp_balance_residual);
    if (r.bound) {
      os << fmt::format("{:.17g},{:.17g},{},", r.bound->lhs, r.bound->rhs, r.bound->holds ? 1 : 0);
    } else {
      os << ",,,";
    }
    os << fmt::format("{:.17g},{},{},{}\n", r.envelope, r.within_envelope ? 1 : 0,
                      r.resolved ? 1 : 0, r.diverged ? 1 : 0);
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace hlx
