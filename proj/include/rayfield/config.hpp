#pragma once
// Key-value experiment configuration: a small TOML-style text format
// ([section] headers, key = value lines, # comments, quoted strings)
// parsed into a fully-validated ExperimentConfig.  Every violation is
// collected and reported with its key path; unknown keys are errors.
//
// Complex literals use a trailing i: "1.5", "1.5+0.5i", "-2i", "i".
// Lists are comma-separated: "10, 20, 40, 80".

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rayfield/energy.hpp"
#include "rayfield/geodesic.hpp"
#include "rayfield/nr_limit.hpp"

namespace rayfield {

struct ConfigIssue {
  std::string key;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
  static std::string join(const std::vector<ConfigIssue>& issues) {
    std::string out = "configuration rejected:";
    for (const ConfigIssue& i : issues) out += "\n  " + i.key + ": " + i.message;
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_double_token(const std::string& s, double& out) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);  // from_chars rejects '+'
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

inline bool parse_int_token(const std::string& s, long long& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

inline bool parse_complex_token(const std::string& s, cplx& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  if (t.back() != 'i' && t.back() != 'I') {
    double re;
    if (!parse_double_token(t, re)) return false;
    out = cplx{re, 0.0};
    return true;
  }
  t.pop_back();  // drop the i
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t j = t.size(); j-- > 1;) {
    if ((t[j] == '+' || t[j] == '-') && t[j - 1] != 'e' && t[j - 1] != 'E') {
      split = j;
      break;
    }
  }
  std::string re_part, im_part;
  if (split == std::string::npos) {
    re_part = "0";
    im_part = trim(t);
  } else {
    re_part = t.substr(0, split);
    im_part = trim(t.substr(split));
  }
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re, im;
  if (!parse_double_token(re_part, re) || !parse_double_token(im_part, im)) return false;
  out = cplx{re, im};
  return true;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      break;
    }
    out.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline bool is_power_of_two(long long v) { return v >= 1 && (v & (v - 1)) == 0; }

}  // namespace detail

// raw key -> value map with section prefixes applied
inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::vector<ConfigIssue> issues;
  std::map<std::string, std::string> kv;
  std::string section;
  size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line =
        nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string tag = "line " + std::to_string(line_no);

    // strip comments (respecting a simple double-quoted string)
    bool in_quote = false;
    for (size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '"') in_quote = !in_quote;
      if (line[j] == '#' && !in_quote) {
        line.resize(j);
        break;
      }
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        issues.push_back({tag, "malformed section header '" + line + "'"});
        continue;
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) issues.push_back({tag, "empty section name"});
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back({tag, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back({tag, "empty key"});
      continue;
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    const std::string path = section.empty() ? key : section + "." + key;
    if (kv.count(path)) {
      issues.push_back({path, "duplicate key"});
      continue;
    }
    kv[path] = value;
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return kv;
}

// typed extraction with issue collection and unknown-key detection
class ConfigReader {
 public:
  explicit ConfigReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& def) {
    auto it = lookup(key);
    return it ? *it : def;
  }

  double get_double(const std::string& key, double def) {
    auto it = lookup(key);
    if (!it) return def;
    double v;
    if (!detail::parse_double_token(*it, v)) {
      fail(key, "expected a number, got '" + *it + "'");
      return def;
    }
    return v;
  }

  long long get_int(const std::string& key, long long def) {
    auto it = lookup(key);
    if (!it) return def;
    long long v;
    if (!detail::parse_int_token(*it, v)) {
      fail(key, "expected an integer, got '" + *it + "'");
      return def;
    }
    return v;
  }

  cplx get_complex(const std::string& key, cplx def) {
    auto it = lookup(key);
    if (!it) return def;
    cplx v;
    if (!detail::parse_complex_token(*it, v)) {
      fail(key, "expected a number or complex literal like 1.5+0.5i, got '" + *it + "'");
      return def;
    }
    return v;
  }

  std::vector<double> get_double_list(const std::string& key, std::vector<double> def) {
    auto it = lookup(key);
    if (!it) return def;
    std::vector<double> out;
    for (const std::string& tok : detail::split_list(*it)) {
      double v;
      if (!detail::parse_double_token(tok, v)) {
        fail(key, "expected a comma-separated list of numbers, got '" + *it + "'");
        return def;
      }
      out.push_back(v);
    }
    return out;
  }

  std::vector<long long> get_int_list(const std::string& key, std::vector<long long> def) {
    auto it = lookup(key);
    if (!it) return def;
    std::vector<long long> out;
    for (const std::string& tok : detail::split_list(*it)) {
      long long v;
      if (!detail::parse_int_token(tok, v)) {
        fail(key, "expected a comma-separated list of integers, got '" + *it + "'");
        return def;
      }
      out.push_back(v);
    }
    return out;
  }

  // choice from a fixed name set
  template <typename T>
  T get_choice(const std::string& key, T def,
               std::initializer_list<std::pair<const char*, T>> options) {
    auto it = lookup(key);
    if (!it) return def;
    for (const auto& [name, value] : options)
      if (*it == name) return value;
    std::string valid;
    for (const auto& [name, value] : options) {
      if (!valid.empty()) valid += ", ";
      valid += name;
    }
    fail(key, "'" + *it + "' is not one of: " + valid);
    return def;
  }

  void require_key(const std::string& key) {
    if (!has(key)) fail(key, "required key is missing");
  }

  void fail(const std::string& key, const std::string& message) {
    issues_.push_back({key, message});
  }

  void check(bool ok, const std::string& key, const std::string& message) {
    if (!ok) fail(key, message);
  }

  // unknown keys become issues; throws when anything went wrong
  void finish() {
    for (const auto& [key, value] : kv_)
      if (!used_.count(key)) issues_.push_back({key, "unknown key"});
    if (!issues_.empty()) throw ConfigError(std::move(issues_));
  }

 private:
  std::optional<std::string> lookup(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }

  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
  std::vector<ConfigIssue> issues_;
};

enum class ExperimentKind { evolve, balance, limit_study, frw_check, tensor_check, vilenkin, geodesic };

inline const char* experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::evolve: return "evolve";
    case ExperimentKind::balance: return "balance";
    case ExperimentKind::limit_study: return "limit_study";
    case ExperimentKind::frw_check: return "frw_check";
    case ExperimentKind::tensor_check: return "tensor_check";
    case ExperimentKind::vilenkin: return "vilenkin";
    case ExperimentKind::geodesic: return "geodesic";
  }
  return "unknown";
}

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::evolve;
  std::string name;  // output file base name
  std::string output_dir = ".";
  std::uint64_t seed = 1;

  // evolve / balance
  PresetKind preset = PresetKind::kg;
  ProblemOptions problem;
  InitialProfile profile;
  double dt = 1e-3;
  double t_end = 1.0;
  long long stride = 10;
  bool allow_growth = false;
  LedgerKind ledger = LedgerKind::field_energy;
  double balance_tol = 1e-6;

  LimitStudyOptions limit;  // limit_study

  struct FrwSection {
    double sigma = 1.0 / 3.0, q = 1.0, k_curv = 0.0, z_max = 1.0, tol = 1e-10;
    int n_dim = 3, samples = 9;
    ScaleModel scale;
    PhysicalConstants consts;
  } frw;

  struct TensorSection {
    double H = 0.7, c = 1.0, t0 = 0.1, t_span = 0.5, step = 1e-3;
    double tol = 1e-6, f_tol = 1e-12, q = 1.3, k2 = 0.3;
    int n_dim = 3, samples = 5;
  } tensor;

  struct VilenkinSection {
    int n_dim = 3, samples = 64;
    double Lambda = 1.5, q = 1.0, k_curv = 1.0, t_span = 0.8;
    double tol = 1e-10, v_tol = 1e-12;
    ScaleModel scale;
    PhysicalConstants consts;
  } vilenkin;

  struct GeodesicSection {
    GeodesicScenario scenario;
    std::vector<double> x0, v0;
    double dt = 1e-3, tol = 1e-7;
    long long steps = 1000, record_stride = 1;
  } geodesic;
};

namespace detail {

inline ScaleModel read_scale(ConfigReader& r, const std::string& prefix, int n_dim,
                             double c_light) {
  ScaleModel s;
  s.kind = r.get_choice(prefix + ".scale", ScaleKind::constant,
                        {std::pair<const char*, ScaleKind>{"constant", ScaleKind::constant},
                         {"power_law", ScaleKind::power_law},
                         {"exponential", ScaleKind::exponential},
                         {"de_sitter", ScaleKind::de_sitter},
                         {"cosh", ScaleKind::cosh_branch},
                         {"exp", ScaleKind::exp_branch},
                         {"cos", ScaleKind::cos_branch}});
  s.n_dim = n_dim;
  s.sigma = r.get_double(prefix + ".sigma", s.sigma);
  s.a0 = r.get_complex(prefix + ".a0", s.a0);
  s.da0 = r.get_complex(prefix + ".da0", s.da0);
  s.H = r.get_double(prefix + ".H", s.H);
  s.k_curv = r.get_double(prefix + ".k_curv", s.k_curv);
  s.q = r.get_double(prefix + ".q", s.q);
  s.ell = r.get_double(prefix + ".ell", s.ell);
  s.C = r.get_double(prefix + ".C", s.C);
  s.branch_sign = static_cast<int>(r.get_int(prefix + ".branch_sign", s.branch_sign));
  s.c_light = c_light;
  return s;
}

inline PhysicalConstants read_constants(ConfigReader& r, const std::string& prefix) {
  PhysicalConstants pc;
  pc.c = r.get_double(prefix + ".c", pc.c);
  pc.m = r.get_double(prefix + ".mass", pc.m);
  pc.hbar = r.get_double(prefix + ".hbar", pc.hbar);
  pc.G = r.get_double(prefix + ".G", pc.G);
  pc.Lambda = r.get_complex(prefix + ".Lambda", pc.Lambda);
  r.check(pc.c > 0.0, prefix + ".c", "must be positive");
  r.check(pc.m > 0.0, prefix + ".mass", "must be positive");
  r.check(pc.hbar > 0.0, prefix + ".hbar", "must be positive");
  return pc;
}

inline InitialProfile read_profile(ConfigReader& r, std::uint64_t seed, int n_dim) {
  InitialProfile p;
  p.kind = r.get_choice("profile.kind", ProfileKind::gaussian,
                        {std::pair<const char*, ProfileKind>{"zero", ProfileKind::zero},
                         {"plane_wave", ProfileKind::plane_wave},
                         {"gaussian", ProfileKind::gaussian},
                         {"mixed_modes", ProfileKind::mixed_modes}});
  p.amplitude = r.get_complex("profile.amplitude", p.amplitude);
  const std::vector<long long> mode = r.get_int_list("profile.mode", {1, 0, 0});
  r.check(!mode.empty() && mode.size() <= 3, "profile.mode", "needs 1 to 3 integers");
  for (size_t j = 0; j < mode.size() && j < 3; ++j) p.mode[j] = static_cast<int>(mode[j]);
  p.width = r.get_double("profile.width", p.width);
  r.check(p.width > 0.0, "profile.width", "must be positive");
  if (r.has("profile.center")) {
    const std::vector<double> c = r.get_double_list("profile.center", {});
    if (static_cast<int>(c.size()) != n_dim)
      r.fail("profile.center", "needs one value per grid axis");
    else {
      std::array<double, 3> arr{0.0, 0.0, 0.0};
      for (size_t j = 0; j < c.size(); ++j) arr[j] = c[j];
      p.center = arr;
    }
  }
  p.kmax = static_cast<int>(r.get_int("profile.kmax", p.kmax));
  r.check(p.kmax >= 1, "profile.kmax", "must be at least 1");
  p.seed = seed;
  return p;
}

inline GridSpec read_grid(ConfigReader& r, const std::string& prefix) {
  GridSpec g;
  g.n_dim = static_cast<int>(r.get_int(prefix + ".n_dim", 1));
  r.check(g.n_dim >= 1 && g.n_dim <= 3, prefix + ".n_dim", "must be 1, 2, or 3");
  const int nd = std::min(std::max(g.n_dim, 1), 3);

  std::vector<long long> pts = r.get_int_list(prefix + ".points", {64});
  if (pts.size() == 1) pts.assign(static_cast<size_t>(nd), pts[0]);
  if (static_cast<int>(pts.size()) != nd)
    r.fail(prefix + ".points", "needs one value (shared) or one per axis");
  g.points = {1, 1, 1};
  for (int j = 0; j < nd && j < static_cast<int>(pts.size()); ++j) {
    if (!is_power_of_two(pts[j]))
      r.fail(prefix + ".points", "each axis needs a power-of-two point count");
    else
      g.points[j] = static_cast<int>(pts[j]);
  }

  std::vector<double> ext = r.get_double_list(prefix + ".extent", {2.0 * pi});
  if (ext.size() == 1) ext.assign(static_cast<size_t>(nd), ext[0]);
  if (static_cast<int>(ext.size()) != nd)
    r.fail(prefix + ".extent", "needs one value (shared) or one per axis");
  g.extent = {2.0 * pi, 2.0 * pi, 2.0 * pi};
  for (int j = 0; j < nd && j < static_cast<int>(ext.size()); ++j) {
    if (!(ext[j] > 0.0))
      r.fail(prefix + ".extent", "must be positive");
    else
      g.extent[j] = ext[j];
  }
  return g;
}

inline void read_potential_terms(ConfigReader& r, const std::string& prefix,
                                 std::vector<std::pair<cplx, double>>& out) {
  if (!r.has(prefix + ".lambda0") && !r.has(prefix + ".power")) return;
  const cplx lam = r.get_complex(prefix + ".lambda0", cplx{0.0, 0.0});
  const double p = r.get_double(prefix + ".power", 3.0);
  r.check(p >= 1.0, prefix + ".power", "must be at least 1");
  out.push_back({lam, p});
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(
    const std::string& text, std::optional<std::uint64_t> seed_override = std::nullopt) {
  ConfigReader r(parse_key_values(text));
  ExperimentConfig cfg;

  r.require_key("experiment");
  cfg.experiment = r.get_choice(
      "experiment", ExperimentKind::evolve,
      {std::pair<const char*, ExperimentKind>{"evolve", ExperimentKind::evolve},
       {"balance", ExperimentKind::balance},
       {"limit_study", ExperimentKind::limit_study},
       {"frw_check", ExperimentKind::frw_check},
       {"tensor_check", ExperimentKind::tensor_check},
       {"vilenkin", ExperimentKind::vilenkin},
       {"geodesic", ExperimentKind::geodesic}});
  cfg.name = r.get_string("name", experiment_name(cfg.experiment));
  cfg.output_dir = r.get_string("output_dir", cfg.output_dir);
  cfg.seed = static_cast<std::uint64_t>(r.get_int("seed", 1));
  if (seed_override) cfg.seed = *seed_override;

  switch (cfg.experiment) {
    case ExperimentKind::evolve:
    case ExperimentKind::balance: {
      r.require_key("problem.preset");
      cfg.preset = r.get_choice(
          "problem.preset", PresetKind::kg,
          {std::pair<const char*, PresetKind>{"kg", PresetKind::kg},
           {"schrodinger", PresetKind::schrodinger},
           {"elliptic", PresetKind::elliptic},
           {"heat", PresetKind::heat},
           {"de_sitter_kg", PresetKind::de_sitter_kg},
           {"cgl", PresetKind::cgl},
           {"custom", PresetKind::custom}});
      if (cfg.preset == PresetKind::elliptic)
        r.fail("problem.preset",
               "the elliptic preset has no well-posed time evolution; "
               "'" + std::string(experiment_name(cfg.experiment)) + "' cannot run it");

      cfg.problem.grid = detail::read_grid(r, "problem");
      cfg.problem.consts = detail::read_constants(r, "problem");
      cfg.problem.sign = static_cast<int>(r.get_int("problem.sign", +1));
      r.check(cfg.problem.sign == 1 || cfg.problem.sign == -1, "problem.sign",
              "must be +1 or -1");
      detail::read_potential_terms(r, "problem", cfg.problem.lambda0);
      cfg.problem.H = r.get_double("problem.H", 0.0);
      if (r.has("problem.scale")) {
        cfg.problem.scale =
            detail::read_scale(r, "problem", cfg.problem.grid.n_dim, cfg.problem.consts.c);
        cfg.problem.scale_set = true;
      }
      cfg.problem.b0 = r.get_complex("problem.b0", cfg.problem.b0);
      cfg.problem.cgl_lambda1 = r.get_complex("problem.cgl_lambda1", cfg.problem.cgl_lambda1);
      cfg.problem.cgl_lambda2 = r.get_complex("problem.cgl_lambda2", cfg.problem.cgl_lambda2);
      cfg.problem.cgl_omega1 = r.get_double("problem.cgl_omega1", cfg.problem.cgl_omega1);
      cfg.problem.order = r.get_choice(
          "problem.order", ProblemOrder::second,
          {std::pair<const char*, ProblemOrder>{"second", ProblemOrder::second},
           {"first", ProblemOrder::first}});
      cfg.problem.omega0 = r.get_double("problem.omega0", 0.0);
      cfg.problem.omega1 = r.get_double("problem.omega1", 0.0);
      cfg.problem.theta = r.get_double("problem.theta", 0.0);

      cfg.profile = detail::read_profile(r, cfg.seed, cfg.problem.grid.n_dim);
      cfg.dt = r.get_double("evolve.dt", cfg.dt);
      r.check(cfg.dt > 0.0, "evolve.dt", "must be positive");
      cfg.t_end = r.get_double("evolve.t_end", cfg.t_end);
      r.check(cfg.t_end > 0.0, "evolve.t_end", "must be positive");
      cfg.stride = r.get_int("evolve.stride", cfg.stride);
      r.check(cfg.stride >= 1, "evolve.stride", "must be at least 1");
      cfg.allow_growth = r.get_choice(
          "evolve.allow_growth", false,
          {std::pair<const char*, bool>{"true", true}, {"false", false}});

      if (cfg.experiment == ExperimentKind::balance) {
        cfg.ledger = r.get_choice(
            "balance.ledger", LedgerKind::field_energy,
            {std::pair<const char*, LedgerKind>{"field_energy", LedgerKind::field_energy},
             {"envelope_charge", LedgerKind::envelope_charge},
             {"envelope_energy", LedgerKind::envelope_energy}});
        cfg.balance_tol = r.get_double("balance.tol", cfg.balance_tol);
        r.check(cfg.balance_tol > 0.0, "balance.tol", "must be positive");
      }
      break;
    }

    case ExperimentKind::limit_study: {
      cfg.limit.grid = detail::read_grid(r, "limit_study");
      cfg.limit.speeds = r.get_double_list("limit_study.speeds", cfg.limit.speeds);
      r.check(cfg.limit.speeds.size() >= 2, "limit_study.speeds",
              "needs at least two speeds");
      for (size_t j = 0; j + 1 < cfg.limit.speeds.size(); ++j)
        r.check(cfg.limit.speeds[j] > 0.0 && cfg.limit.speeds[j] < cfg.limit.speeds[j + 1],
                "limit_study.speeds", "must be positive and strictly increasing");
      cfg.limit.m = r.get_double("limit_study.mass", cfg.limit.m);
      cfg.limit.hbar = r.get_double("limit_study.hbar", cfg.limit.hbar);
      r.check(cfg.limit.m > 0.0, "limit_study.mass", "must be positive");
      r.check(cfg.limit.hbar > 0.0, "limit_study.hbar", "must be positive");
      cfg.limit.t_end = r.get_double("limit_study.t_end", cfg.limit.t_end);
      r.check(cfg.limit.t_end > 0.0, "limit_study.t_end", "must be positive");
      cfg.limit.resolution_factor =
          r.get_double("limit_study.resolution_factor", cfg.limit.resolution_factor);
      r.check(cfg.limit.resolution_factor >= 1.0, "limit_study.resolution_factor",
              "must be at least 1");
      detail::read_potential_terms(r, "limit_study", cfg.limit.lambda0);
      cfg.limit.sign = static_cast<int>(r.get_int("limit_study.sign", cfg.limit.sign));
      r.check(cfg.limit.sign == 1 || cfg.limit.sign == -1, "limit_study.sign",
              "must be +1 or -1");
      cfg.limit.profile = detail::read_profile(r, cfg.seed, cfg.limit.grid.n_dim);
      break;
    }

    case ExperimentKind::frw_check: {
      cfg.frw.n_dim = static_cast<int>(r.get_int("frw_check.n_dim", cfg.frw.n_dim));
      r.check(cfg.frw.n_dim >= 3, "frw_check.n_dim", "must be at least 3");
      cfg.frw.sigma = r.get_double("frw_check.sigma", cfg.frw.sigma);
      cfg.frw.q = r.get_double("frw_check.q", cfg.frw.q);
      r.check(cfg.frw.q != 0.0, "frw_check.q", "must be nonzero");
      cfg.frw.k_curv = r.get_double("frw_check.k_curv", cfg.frw.k_curv);
      cfg.frw.z_max = r.get_double("frw_check.z_max", cfg.frw.z_max);
      r.check(cfg.frw.z_max > 0.0, "frw_check.z_max", "must be positive");
      cfg.frw.samples = static_cast<int>(r.get_int("frw_check.samples", cfg.frw.samples));
      r.check(cfg.frw.samples >= 2, "frw_check.samples", "needs at least 2");
      cfg.frw.tol = r.get_double("frw_check.tol", cfg.frw.tol);
      cfg.frw.consts = detail::read_constants(r, "frw_check");
      cfg.frw.scale.kind =
          cfg.frw.sigma == -1.0 ? ScaleKind::exponential : ScaleKind::power_law;
      cfg.frw.scale.n_dim = cfg.frw.n_dim;
      cfg.frw.scale.sigma = cfg.frw.sigma;
      cfg.frw.scale.a0 = r.get_complex("frw_check.a0", cplx{1.0, 0.0});
      cfg.frw.scale.da0 = r.get_complex("frw_check.da0", cplx{0.5, 0.0});
      break;
    }

    case ExperimentKind::tensor_check: {
      cfg.tensor.n_dim = static_cast<int>(r.get_int("tensor_check.n_dim", cfg.tensor.n_dim));
      r.check(cfg.tensor.n_dim >= 2, "tensor_check.n_dim", "must be at least 2");
      cfg.tensor.H = r.get_double("tensor_check.H", cfg.tensor.H);
      cfg.tensor.c = r.get_double("tensor_check.c", cfg.tensor.c);
      r.check(cfg.tensor.c > 0.0, "tensor_check.c", "must be positive");
      cfg.tensor.t0 = r.get_double("tensor_check.t0", cfg.tensor.t0);
      cfg.tensor.t_span = r.get_double("tensor_check.t_span", cfg.tensor.t_span);
      r.check(cfg.tensor.t_span > 0.0, "tensor_check.t_span", "must be positive");
      cfg.tensor.step = r.get_double("tensor_check.step", cfg.tensor.step);
      r.check(cfg.tensor.step > 0.0, "tensor_check.step", "must be positive");
      cfg.tensor.samples =
          static_cast<int>(r.get_int("tensor_check.samples", cfg.tensor.samples));
      r.check(cfg.tensor.samples >= 1, "tensor_check.samples", "needs at least 1");
      cfg.tensor.tol = r.get_double("tensor_check.tol", cfg.tensor.tol);
      cfg.tensor.f_tol = r.get_double("tensor_check.f_tol", cfg.tensor.f_tol);
      cfg.tensor.q = r.get_double("tensor_check.q", cfg.tensor.q);
      r.check(cfg.tensor.q != 0.0, "tensor_check.q", "must be nonzero");
      cfg.tensor.k2 = r.get_double("tensor_check.k2", cfg.tensor.k2);
      break;
    }

    case ExperimentKind::vilenkin: {
      cfg.vilenkin.n_dim = static_cast<int>(r.get_int("vilenkin.n_dim", cfg.vilenkin.n_dim));
      r.check(cfg.vilenkin.n_dim >= 2, "vilenkin.n_dim", "must be at least 2");
      cfg.vilenkin.Lambda = r.get_double("vilenkin.Lambda", cfg.vilenkin.Lambda);
      r.check(cfg.vilenkin.Lambda > 0.0, "vilenkin.Lambda", "must be positive");
      cfg.vilenkin.q = r.get_double("vilenkin.q", cfg.vilenkin.q);
      r.check(cfg.vilenkin.q != 0.0, "vilenkin.q", "must be nonzero");
      cfg.vilenkin.k_curv = r.get_double("vilenkin.k_curv", cfg.vilenkin.k_curv);
      cfg.vilenkin.samples =
          static_cast<int>(r.get_int("vilenkin.samples", cfg.vilenkin.samples));
      r.check(cfg.vilenkin.samples >= 2, "vilenkin.samples", "needs at least 2");
      cfg.vilenkin.t_span = r.get_double("vilenkin.t_span", cfg.vilenkin.t_span);
      r.check(cfg.vilenkin.t_span > 0.0, "vilenkin.t_span", "must be positive");
      cfg.vilenkin.tol = r.get_double("vilenkin.tol", cfg.vilenkin.tol);
      cfg.vilenkin.v_tol = r.get_double("vilenkin.v_tol", cfg.vilenkin.v_tol);
      cfg.vilenkin.consts = detail::read_constants(r, "vilenkin");
      cfg.vilenkin.consts.Lambda = cfg.vilenkin.Lambda;
      cfg.vilenkin.scale =
          detail::read_scale(r, "vilenkin", cfg.vilenkin.n_dim, cfg.vilenkin.consts.c);
      if (!r.has("vilenkin.scale")) cfg.vilenkin.scale.kind = ScaleKind::cosh_branch;
      cfg.vilenkin.scale.k_curv = cfg.vilenkin.k_curv;
      cfg.vilenkin.scale.q = cfg.vilenkin.q;
      break;
    }

    case ExperimentKind::geodesic: {
      auto& geo = cfg.geodesic;
      geo.scenario.n_dim = static_cast<int>(r.get_int("geodesic.n_dim", 3));
      r.check(geo.scenario.n_dim >= 1 && geo.scenario.n_dim <= 3, "geodesic.n_dim",
              "must be 1, 2, or 3");
      geo.scenario.omega0 = r.get_double("geodesic.omega0", 0.0);
      geo.scenario.omega1 = r.get_double("geodesic.omega1", 0.0);
      geo.scenario.m = r.get_double("geodesic.mass", 1.0);
      r.check(geo.scenario.m > 0.0, "geodesic.mass", "must be positive");
      geo.scenario.c = r.get_double("geodesic.c", 1.0);
      r.check(geo.scenario.c > 0.0, "geodesic.c", "must be positive");
      geo.scenario.scale = detail::read_scale(
          r, "geodesic", std::max(geo.scenario.n_dim, 1), geo.scenario.c);
      const size_t nd = static_cast<size_t>(std::max(geo.scenario.n_dim, 1));
      geo.x0 = r.get_double_list("geodesic.x0", std::vector<double>(nd, 0.0));
      geo.v0 = r.get_double_list("geodesic.v0", std::vector<double>(nd, 0.0));
      r.check(geo.x0.size() == nd, "geodesic.x0", "needs one value per spatial axis");
      r.check(geo.v0.size() == nd, "geodesic.v0", "needs one value per spatial axis");
      geo.dt = r.get_double("geodesic.dt", geo.dt);
      r.check(geo.dt > 0.0, "geodesic.dt", "must be positive");
      geo.steps = r.get_int("geodesic.steps", geo.steps);
      r.check(geo.steps >= 1, "geodesic.steps", "must be at least 1");
      geo.record_stride = r.get_int("geodesic.record_stride", geo.record_stride);
      r.check(geo.record_stride >= 1, "geodesic.record_stride", "must be at least 1");
      geo.tol = r.get_double("geodesic.tol", geo.tol);
      r.check(geo.tol > 0.0, "geodesic.tol", "must be positive");
      break;
    }
  }

  r.finish();
  return cfg;
}

}  // namespace rayfield
