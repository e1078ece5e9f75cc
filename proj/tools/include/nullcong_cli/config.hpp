#pragma once

// Run configuration: flat key = value text with optional [subcommand]
// sections and # comments. Keys outside any section apply to every
// subcommand; keys inside [name] apply only when `name` runs.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcong/grid.hpp"

namespace nullcong::cli {

// Bad configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string family = "linear_kerr";
  std::map<std::string, std::string> params;
  GridSpec grid;
  bool grid_set = false;
  std::string diff = "auto";  // auto, ad, fd
  double step = 1e-5;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;  // output directory; empty prints JSON to stdout
  std::string profile = "a2";
  std::string input;  // verify: CSV written by synthesize
  std::size_t samples = 10000;

  void validate() const;
};

const std::vector<std::string>& subcommands();
const std::vector<std::string>& families();

// Every recognized key with its default, for --help.
std::string config_reference();

// Applies one key to `cfg`. "param.NAME" keys fill cfg.params.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Applies the lines of `text` relevant to cfg.subcommand.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

// "re,im,re,im,..." into complex numbers.
std::vector<cplx> parse_complex_list(const std::string& text, std::size_t expected);

}  // namespace nullcong::cli
