#include "elastomap/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {

const std::vector<std::string> kRequired = {"dimension", "grid",   "contrast", "seed",
                                            "generator", "solver", "output"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, int line, const std::string& why) {
  const std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
  throw Error(ErrorCode::ConfigError, "key '" + key + "'" + where + ": " + why);
}

template <class T>
T parse_number(const std::string& key, const std::string& v, int line) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad(key, line, "not a number: " + v);
  return out;
}

std::vector<std::string> split(const std::string& v, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : v) {
    if (seps.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, line, "expected true or false, got " + v);
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dimension", "grid",     "contrast",    "seed",       "generator",
      "n_cells",   "corr_lengths", "wrap",    "inclusion_radius", "inclusion_kappa",
      "inclusion_mu", "solver", "tol",        "max_iter",   "loads",
      "kappa0",    "mu0",      "output",      "diagnostics", "anchoring",
      "pgm"};
  return keys;
}

ConfigEntries parse_config_text(const std::string& text, const std::string& source) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  const auto& keys = config_keys();
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError,
                  source + ":" + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::ConfigError,
                  source + ":" + std::to_string(line) + ": unknown key '" + key + "'");
    }
    if (out.values.contains(key)) {
      throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(line) + ": duplicate key '" +
                                              key + "'");
    }
    out.values[key] = {value, line};
  }
  return out;
}

ConfigEntries read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

RunConfig build_config(const ConfigEntries& file, const ConfigEntries& overrides) {
  auto merged = file.values;
  for (const auto& [k, v] : overrides.values) merged[k] = v;
  const auto& keys = config_keys();
  for (const auto& [k, v] : merged) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) bad(k, v.second, "unknown key");
  }
  for (const auto& k : kRequired) {
    if (!merged.contains(k)) throw Error(ErrorCode::ConfigError, "missing required key '" + k + "'");
  }

  RunConfig cfg;
  for (const auto& [key, entry] : merged) {
    const auto& [v, line] = entry;
    if (key == "dimension") {
      cfg.dimension = parse_number<int>(key, v, line);
      if (cfg.dimension != 2 && cfg.dimension != 3) bad(key, line, "must be 2 or 3");
    } else if (key == "grid") {
      for (const auto& part : split(v, "x, ")) cfg.grid.push_back(parse_number<int>(key, part, line));
    } else if (key == "contrast") {
      cfg.contrast = parse_number<double>(key, v, line);
      if (cfg.contrast < 0.0) bad(key, line, "must be >= 0");
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, v, line);
    } else if (key == "generator") {
      if (v == "voronoi") cfg.generator = GeneratorKind::Voronoi;
      else if (v == "smooth") cfg.generator = GeneratorKind::Smooth;
      else if (v == "inclusion") cfg.generator = GeneratorKind::Inclusion;
      else if (v == "homogeneous") cfg.generator = GeneratorKind::Homogeneous;
      else bad(key, line, "expected voronoi, smooth, inclusion or homogeneous");
    } else if (key == "n_cells") {
      cfg.n_cells = parse_number<int>(key, v, line);
      if (cfg.n_cells < 1) bad(key, line, "must be >= 1");
    } else if (key == "corr_lengths") {
      for (const auto& part : split(v, ", ")) {
        cfg.corr_lengths.push_back(parse_number<double>(key, part, line));
      }
    } else if (key == "wrap") {
      cfg.wrap = parse_bool(key, v, line);
    } else if (key == "inclusion_radius") {
      cfg.inclusion_radius = parse_number<double>(key, v, line);
    } else if (key == "inclusion_kappa") {
      cfg.inclusion_kappa = parse_number<double>(key, v, line);
    } else if (key == "inclusion_mu") {
      cfg.inclusion_mu = parse_number<double>(key, v, line);
    } else if (key == "solver") {
      if (v == "spectral") cfg.solver = SolverKind::Spectral;
      else if (v == "fem") cfg.solver = SolverKind::Fem;
      else bad(key, line, "expected spectral or fem");
    } else if (key == "tol") {
      cfg.tol = parse_number<double>(key, v, line);
      if (!(cfg.tol > 0.0)) bad(key, line, "must be positive");
    } else if (key == "max_iter") {
      cfg.max_iter = parse_number<int>(key, v, line);
      if (cfg.max_iter < 1) bad(key, line, "must be >= 1");
    } else if (key == "loads") {
      if (v == "all") cfg.loads = LoadSet::All;
      else if (v == "bulk") cfg.loads = LoadSet::Bulk;
      else if (v == "shear") cfg.loads = LoadSet::Shear;
      else bad(key, line, "expected all, bulk or shear");
    } else if (key == "kappa0") {
      cfg.kappa0 = parse_number<double>(key, v, line);
      cfg.reference_given = true;
    } else if (key == "mu0") {
      cfg.mu0 = parse_number<double>(key, v, line);
      cfg.reference_given = true;
    } else if (key == "output") {
      if (v.empty()) bad(key, line, "must not be empty");
      cfg.output = v;
    } else if (key == "diagnostics") {
      cfg.diagnostics = parse_bool(key, v, line);
    } else if (key == "anchoring") {
      if (v == "mean") cfg.anchoring_mean = true;
      else if (v == "none") cfg.anchoring_mean = false;
      else bad(key, line, "expected mean or none");
    } else if (key == "pgm") {
      cfg.pgm = parse_bool(key, v, line);
    }
  }

  const int gline = merged.at("grid").second;
  if (cfg.grid.size() == 1) cfg.grid.assign(cfg.dimension, cfg.grid.front());
  if (static_cast<int>(cfg.grid.size()) != cfg.dimension) {
    bad("grid", gline, "needs one extent per axis");
  }
  for (int n : cfg.grid) {
    if (n < 2) bad("grid", gline, "extents must be >= 2");
  }
  if (cfg.solver == SolverKind::Fem && cfg.dimension != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "finite element solver is 2D only");
  }
  if (!cfg.corr_lengths.empty() && static_cast<int>(cfg.corr_lengths.size()) != cfg.dimension) {
    bad("corr_lengths", merged.at("corr_lengths").second, "needs one length per axis");
  }
  if (cfg.contrast == 0.0 && cfg.generator != GeneratorKind::Homogeneous &&
      cfg.generator != GeneratorKind::Inclusion) {
    bad("contrast", merged.at("contrast").second, "must be positive for random generators");
  }
  if (!(cfg.kappa0 > 0.0) || !(cfg.mu0 > 0.0)) {
    throw Error(ErrorCode::ConfigError, "kappa0 and mu0 must be positive");
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  static const char* gen[] = {"voronoi", "smooth", "inclusion", "homogeneous"};
  static const char* loads[] = {"all", "bulk", "shear"};
  std::ostringstream o;
  o << "dimension = " << cfg.dimension << '\n'
    << "grid = " << join_ints(cfg.grid, 'x') << '\n'
    << "contrast = " << fmt(cfg.contrast) << '\n'
    << "seed = " << cfg.seed << '\n'
    << "generator = " << gen[static_cast<int>(cfg.generator)] << '\n'
    << "n_cells = " << cfg.n_cells << '\n';
  if (!cfg.corr_lengths.empty()) {
    o << "corr_lengths = ";
    for (std::size_t i = 0; i < cfg.corr_lengths.size(); ++i) {
      o << (i ? "," : "") << fmt(cfg.corr_lengths[i]);
    }
    o << '\n';
  }
  o << "wrap = " << (cfg.wrap ? "true" : "false") << '\n'
    << "inclusion_radius = " << fmt(cfg.inclusion_radius) << '\n'
    << "inclusion_kappa = " << fmt(cfg.inclusion_kappa) << '\n'
    << "inclusion_mu = " << fmt(cfg.inclusion_mu) << '\n'
    << "solver = " << (cfg.solver == SolverKind::Spectral ? "spectral" : "fem") << '\n'
    << "tol = " << fmt(cfg.tol) << '\n'
    << "max_iter = " << cfg.max_iter << '\n'
    << "loads = " << loads[static_cast<int>(cfg.loads)] << '\n'
    << "kappa0 = " << fmt(cfg.kappa0) << '\n'
    << "mu0 = " << fmt(cfg.mu0) << '\n'
    << "output = " << cfg.output.string() << '\n'
    << "diagnostics = " << (cfg.diagnostics ? "true" : "false") << '\n'
    << "anchoring = " << (cfg.anchoring_mean ? "mean" : "none") << '\n'
    << "pgm = " << (cfg.pgm ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace elastomap
