#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "nullcong_cli/run.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::map<std::string, std::string> keys;
  std::vector<std::string> params;
};

void add_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Config file (key = value, [subcommand] sections)");
  const std::pair<const char*, const char*> keys[] = {
      {"family", "Congruence family"},
      {"grid", "Grid T,X,Y,Z:H:N (H, N one or four values)"},
      {"diff", "Differentiation: auto, ad or fd"},
      {"step", "Central-difference step"},
      {"tol", "Pass tolerance"},
      {"seed", "Random seed"},
      {"workers", "Worker threads"},
      {"out", "Output directory (JSON to stdout when empty)"},
      {"profile", "Field profile: one, a2, expb, ab, conja"},
      {"input", "verify: CSV written by synthesize"},
      {"samples", "Random draws for selftest and example-sec4"},
  };
  for (const auto& [key, help] : keys) {
    const std::string k = key;
    sub->add_option_function<std::string>("--" + k, [&f, k](const std::string& v) { f.keys[k] = v; }, help);
  }
  sub->add_option("--param", f.params, "Family parameter NAME=VALUE (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nullcong::cli;
  CLI::App app{"nullcong: shear-free null congruences, twistors and null Maxwell fields"};
  app.footer(config_reference());
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::string> about = {
      {"selftest", "Spinor, Hodge, twistor and frame identity suites"},
      {"analyze", "Shear, geodesy and twist on a grid (CSV + JSON)"},
      {"synthesize", "Null field samples on a grid (CSV)"},
      {"verify", "Field equations and algebraic checks (JSON)"},
      {"example-sec4", "Certification suite for the slit-plane example"},
  };
  for (const std::string& name : subcommands()) add_options(app.add_subcommand(name, about.at(name)), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  RunConfig cfg;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (flags.config) apply_config_file(cfg, *flags.config);
    for (const auto& [k, v] : flags.keys) set_key(cfg, k, v);
    for (const std::string& p : flags.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw ConfigError("--param expects NAME=VALUE, got '" + p + "'");
      set_key(cfg, "param." + p.substr(0, eq), p.substr(eq + 1));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return run(cfg, std::cout, std::cerr);
}
