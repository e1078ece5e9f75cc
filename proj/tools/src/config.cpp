#include "nullcong_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nullcong::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(d)) throw ConfigError(key + ": not a number: '" + v + "'");
  return d;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(key + ": not a non-negative integer: '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError(key + ": out of range: '" + v + "'");
  }
}

bool contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"selftest", "analyze", "synthesize", "verify", "example-sec4"};
  return s;
}

const std::vector<std::string>& families() {
  static const std::vector<std::string> f = {"constant",          "linear_kerr",          "affine", "cr_graph",
                                             "inverted_constant", "inverted_linear_kerr"};
  return f;
}

void RunConfig::validate() const {
  if (!contains(subcommands(), subcommand)) throw ConfigError("unknown subcommand '" + subcommand + "'");
  if (!contains(families(), family)) throw ConfigError("unknown family '" + family + "'");
  if (diff != "auto" && diff != "ad" && diff != "fd") throw ConfigError("diff must be auto, ad or fd");
  if (!(step > 0.0)) throw ConfigError("step must be > 0");
  if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
  if (workers < 1 || workers > 256) throw ConfigError("workers must be in [1, 256]");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string config_reference() {
  return "Config keys (file: key = value, [subcommand] sections, # comments):\n"
         "  family   = linear_kerr   constant | linear_kerr | affine | cr_graph |\n"
         "                           inverted_constant | inverted_linear_kerr\n"
         "  grid     = T,X,Y,Z:H:N   H, N single or 4 comma values (default per subcommand)\n"
         "  diff     = auto          auto | ad | fd\n"
         "  step     = 1e-5          central-difference step\n"
         "  tol      = 1e-10\n"
         "  seed     = 0\n"
         "  workers  = 1\n"
         "  out      =               output directory; empty prints JSON to stdout\n"
         "  profile  = a2            one | a2 | expb | ab | conja\n"
         "  input    =               verify: CSV written by synthesize\n"
         "  samples  = 10000         random draws for selftest and example-sec4\n"
         "  param.o       = 1,0,0,0            constant spinor (re,im,re,im)\n"
         "  param.lambda  = 0.5,0.2,-0.3,1     linear_kerr lambda_A\n"
         "  param.mu      = 1,0,0.2,-0.4       linear_kerr mu^A'\n"
         "  param.o0, param.m                  affine: 4 and 16 reals\n";
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key.rfind("param.", 0) == 0) {
    if (key.size() == 6) throw ConfigError("empty parameter name");
    cfg.params[key.substr(6)] = value;
  } else if (key == "family") {
    cfg.family = value;
  } else if (key == "grid") {
    try {
      cfg.grid = parse_grid(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    cfg.grid_set = true;
  } else if (key == "diff") {
    cfg.diff = value;
  } else if (key == "step") {
    cfg.step = parse_double(key, value);
  } else if (key == "tol") {
    cfg.tol = parse_double(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_unsigned(key, value);
  } else if (key == "workers") {
    const auto w = parse_unsigned(key, value);
    if (w > 256) throw ConfigError("workers must be in [1, 256]");
    cfg.workers = static_cast<int>(w);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "profile") {
    cfg.profile = value;
  } else if (key == "input") {
    cfg.input = value;
  } else if (key == "samples") {
    cfg.samples = parse_unsigned(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (!contains(subcommands(), section)) throw ConfigError(where + "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (!section.empty() && section != cfg.subcommand) continue;
    try {
      set_key(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

std::vector<cplx> parse_complex_list(const std::string& text, std::size_t expected) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_double("parameter", trim(item)));
  if (v.size() != 2 * expected)
    throw ConfigError("expected " + std::to_string(2 * expected) + " reals, got " + std::to_string(v.size()) +
                      " in '" + text + "'");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < expected; ++i) out.emplace_back(v[2 * i], v[2 * i + 1]);
  return out;
}

}  // namespace nullcong::cli
